#include "mbasynth/counting.hpp"

#include "mbasynth/error.hpp"

namespace mbasynth {

namespace {

[[noreturn]] void overflow(int s, int slot) {
    throw CapacityError("count T[" + std::to_string(s) + "][" + slot_name(slot) + "] exceeds 128 bits", s,
                        slot);
}

}  // namespace

std::string slot_name(int slot) {
    static constexpr const char* kNames[kNumSlots] = {"NOT", "AND", "OR",  "XOR", "NEG",
                                                      "ADD", "SUB", "MUL", "TOTAL"};
    return (slot >= 0 && slot < kNumSlots) ? kNames[slot] : "?";
}

CountTable CountTable::build(int k, int max_size) {
    if (k < 1) throw ConfigError("variable count must be at least 1");
    if (max_size < 1) throw ConfigError("max size must be at least 1");

    CountTable t;
    t.k_ = k;
    t.max_size_ = max_size;
    t.rows_.assign(max_size + 1, {});
    t.offsets_.assign(max_size + 1, {});
    t.split_prefix_.assign(max_size + 1, {});
    t.rows_[1][kTotalSlot] = static_cast<u128>(k);

    for (int s = 2; s <= max_size; ++s) {
        auto& prefix = t.split_prefix_[s];
        prefix.assign(s, 0);
        // prefix[j] = sum over j' < j; prefix[s-1] is the full SUB count.
        for (int j = 1; j + 1 < s; ++j) {
            auto product = checked_mul(t.rows_[j][kTotalSlot], t.rows_[s - 1 - j][kTotalSlot]);
            if (!product) overflow(s, slot_of(Op::Sub));
            auto next = checked_add(prefix[j], *product);
            if (!next) overflow(s, slot_of(Op::Sub));
            prefix[j + 1] = *next;
        }
        const u128 unary = t.rows_[s - 1][kTotalSlot];
        const u128 commutative = prefix[split_last(s, Op::Add) + 1];
        const u128 sub = prefix[s - 1];

        auto& row = t.rows_[s];
        for (Op op : kAllOps) {
            row[slot_of(op)] = is_unary(op) ? unary : (is_commutative(op) ? commutative : sub);
        }
        u128 acc = 0;
        for (Op op : kAllOps) {
            t.offsets_[s][slot_of(op)] = acc;
            auto next = checked_add(acc, row[slot_of(op)]);
            if (!next) overflow(s, kTotalSlot);
            acc = *next;
        }
        row[kTotalSlot] = acc;
        t.offsets_[s][kTotalSlot] = acc;
    }

    t.cumulative_.assign(max_size + 1, u128{0});
    std::optional<u128> running = u128{0};
    for (int s = 1; s <= max_size; ++s) {
        if (running) running = checked_add(*running, t.rows_[s][kTotalSlot]);
        t.cumulative_[s] = running;
    }
    return t;
}

u128 CountTable::cumulative_total(int s) const {
    if (s < 1 || s > max_size_) throw DomainError("size " + std::to_string(s) + " outside table");
    if (!cumulative_[s]) overflow(s, kTotalSlot);
    return *cumulative_[s];
}

}  // namespace mbasynth
