#include "pgp/dsl/interpreter.hpp"

#include <algorithm>

namespace pgp::dsl {

namespace {

class Interpreter {
public:
    Interpreter(const Chromosome& c, const sim::Observation& o) : c_(c), nodes_(c.nodes()), obs_(o)
    {
    }

    std::uint8_t run()
    {
        act(0);
        return bits_;
    }

private:
    // Each evaluator returns the index just past the subtree it consumed.
    std::size_t act(std::size_t i)
    {
        switch (nodes_[i].gene) {
        case Gene::IfElse: {
            bool cond = false;
            const std::size_t thenAt = boolean(i + 1, cond);
            const std::size_t elseAt = thenAt + c_.subtree_size(thenAt);
            act(cond ? thenAt : elseAt);
            return elseAt + c_.subtree_size(elseAt);
        }
        case Gene::Seq2:
            return act(act(i + 1));
        case Gene::Seq3:
            return act(act(act(i + 1)));
        case Gene::Left:
            bits_ |= sim::bits::kLeft;
            break;
        case Gene::Right:
            bits_ |= sim::bits::kRight;
            break;
        case Gene::Up:
            bits_ |= sim::bits::kUp;
            break;
        case Gene::Down:
            bits_ |= sim::bits::kDown;
            break;
        case Gene::Jump:
            bits_ |= sim::bits::kJump;
            break;
        case Gene::Shoot:
        case Gene::Run:
            bits_ |= sim::bits::kFire;
            break;
        default:
            break;
        }
        return i + 1;
    }

    std::size_t boolean(std::size_t i, bool& out)
    {
        switch (nodes_[i].gene) {
        case Gene::And: {
            bool a = false;
            bool b = false;
            const auto next = boolean(boolean(i + 1, a), b);
            out = a && b;
            return next;
        }
        case Gene::Or: {
            bool a = false;
            bool b = false;
            const auto next = boolean(boolean(i + 1, a), b);
            out = a || b;
            return next;
        }
        case Gene::Not: {
            const auto next = boolean(i + 1, out);
            out = !out;
            return next;
        }
        case Gene::IsCoinAt:
            return sensor(i, obs_.coins, out);
        case Gene::IsEnemyAt:
            return sensor(i, obs_.enemies, out);
        case Gene::IsBreakableAt:
            return sensor(i, obs_.breakables, out);
        case Gene::IsTall:
            out = obs_.isTall;
            break;
        case Gene::CanJump:
            out = obs_.canJump;
            break;
        case Gene::CanShoot:
            out = obs_.canShoot;
            break;
        default:
            out = false;
            break;
        }
        return i + 1;
    }

    std::size_t sensor(std::size_t i, const sim::ObservationGrid& grid, bool& out)
    {
        int dx = 0;
        int dy = 0;
        const auto next = integer(integer(i + 1, dx), dy);
        out = grid.at(dx, dy);
        return next;
    }

    std::size_t integer(std::size_t i, int& out)
    {
        if (nodes_[i].gene == Gene::Sub) {
            int a = 0;
            int b = 0;
            const auto next = integer(integer(i + 1, a), b);
            out = std::clamp(a - b, kMinConst, kMaxConst);
            return next;
        }
        out = nodes_[i].value;
        return i + 1;
    }

    const Chromosome& c_;
    std::span<const Node> nodes_;
    const sim::Observation& obs_;
    std::uint8_t bits_ = 0;
};

} // namespace

sim::ControlVector evaluate(const Chromosome& chromosome, const sim::Observation& observation)
{
    return sim::ControlVector::decode(Interpreter(chromosome, observation).run());
}

sim::Controller as_controller(Chromosome chromosome)
{
    return [c = std::move(chromosome)](const sim::Observation& o) {
        return Interpreter(c, o).run();
    };
}

} // namespace pgp::dsl
