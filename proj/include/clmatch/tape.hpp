#pragma once

#include <cstdint>
#include <vector>

#include "clmatch/bitvec.hpp"
#include "clmatch/graph.hpp"
#include "clmatch/util.hpp"

namespace clmatch {

// Region map of the catalytic tape: |E| weight fields, then reserve slots,
// then scratch. All fields are weight_bits wide, big-endian.
struct TapeLayout {
    int n = 0;            // vertices per side, fixes packed-record widths
    int num_weights = 0;  // |E|
    int weight_bits = 0;  // b
    int num_reserves = 0;
    int scratch_bits = 0;

    static int min_weight_bits(int n) { return ceil_log2(n + 1) + 2 * ceil_log2(n) + 2; }
    static int default_weight_bits(int n);
    static int default_num_reserves(int n, int m);

    static TapeLayout for_graph(const BipartiteGraph& g, int weight_bits = 0,
                                int num_reserves = -1, int scratch_bits = 0);

    // Packed compression record inside a reserve slot: k, then the erased
    // edge's endpoints, then zero padding.
    int k_bits() const { return ceil_log2(n + 1); }
    int vertex_bits() const { return ceil_log2(n); }
    int record_bits() const { return k_bits() + 2 * vertex_bits(); }
    int padding_bits() const { return weight_bits - record_bits(); }

    std::size_t weight_offset(int i) const;
    std::size_t reserve_offset(int i) const;
    std::size_t scratch_offset() const;
    std::size_t total_bits() const;

    void validate() const;
};

struct PackedRecord {
    int k = 0;
    int u = 0;
    int v = 0;
};

// Adversarial bit string plus the bookkeeping needed to prove we gave it back.
class CatalyticTape {
public:
    CatalyticTape(TapeLayout layout, BitVec bits);

    static CatalyticTape from_seed(const TapeLayout& layout, std::uint64_t seed);
    static CatalyticTape from_hex(const TapeLayout& layout, const std::string& hex);
    static CatalyticTape zeros(const TapeLayout& layout);

    const TapeLayout& layout() const { return layout_; }
    const BitVec& bits() const { return bits_; }

    std::int64_t read_weight(int i) const;
    void write_weight(int i, std::int64_t value);
    WeightAssignment read_weights() const;

    std::int64_t read_reserve_raw(int i) const;
    void write_reserve_raw(int i, std::int64_t value);

    // Stores (k, u, v) into slot i and zeroes the padding bits.
    void write_record(int i, const PackedRecord& rec);
    // Reads slot i as a record; padding_ok reports whether padding was zero.
    PackedRecord read_record(int i, bool* padding_ok = nullptr) const;

    // Free-bit accounting: +padding per comp, -padding per decomp.
    void account_free(int delta_bits);
    int freed_bits() const { return freed_bits_; }
    int freed_bits_peak() const { return freed_bits_peak_; }

    // True iff current bits match the initial snapshot exactly.
    bool restore_check() const { return bits_ == snapshot_; }
    const BitVec& snapshot() const { return snapshot_; }

private:
    TapeLayout layout_;
    BitVec bits_;
    BitVec snapshot_;
    int freed_bits_ = 0;
    int freed_bits_peak_ = 0;
};

} // namespace clmatch
