#include "clmatch/tape.hpp"

#include <algorithm>
#include <cmath>

namespace clmatch {

int TapeLayout::default_weight_bits(int n) {
    return std::max(5 * ceil_log2(n), min_weight_bits(n));
}

int TapeLayout::default_num_reserves(int n, int m) {
    // Fallback-time bound |E| * sqrt(2n) over the bits freed per comp, with a
    // floor of 1 in the denominator so n=1 stays defined.
    double t = static_cast<double>(m) * std::sqrt(2.0 * n);
    int denom = std::max(1, 2 * ceil_log2(n));
    return static_cast<int>(std::ceil(t / denom)) + 1;
}

TapeLayout TapeLayout::for_graph(const BipartiteGraph& g, int weight_bits, int num_reserves,
                                 int scratch_bits) {
    TapeLayout l;
    l.n = g.n();
    l.num_weights = g.m();
    l.weight_bits = weight_bits > 0 ? weight_bits : default_weight_bits(g.n());
    l.num_reserves = num_reserves >= 0 ? num_reserves : default_num_reserves(g.n(), g.m());
    l.scratch_bits = scratch_bits;
    l.validate();
    return l;
}

void TapeLayout::validate() const {
    if (n < 1 || n > kMaxN) throw InputError("tape layout: n out of range");
    if (num_weights < 0) throw InputError("tape layout: negative weight count");
    if (num_reserves < 0) throw InputError("tape layout: negative reserve count");
    if (scratch_bits < 0) throw InputError("tape layout: negative scratch size");
    if (weight_bits < min_weight_bits(n))
        throw InputError("tape layout: weight_bits=" + std::to_string(weight_bits) +
                         " below the packing minimum " + std::to_string(min_weight_bits(n)) +
                         " for n=" + std::to_string(n));
    if (weight_bits > 62) throw InputError("tape layout: weight_bits exceeds 62");
}

std::size_t TapeLayout::weight_offset(int i) const {
    return static_cast<std::size_t>(i) * weight_bits;
}

std::size_t TapeLayout::reserve_offset(int i) const {
    return static_cast<std::size_t>(num_weights + i) * weight_bits;
}

std::size_t TapeLayout::scratch_offset() const {
    return static_cast<std::size_t>(num_weights + num_reserves) * weight_bits;
}

std::size_t TapeLayout::total_bits() const { return scratch_offset() + scratch_bits; }

CatalyticTape::CatalyticTape(TapeLayout layout, BitVec bits)
    : layout_(layout), bits_(std::move(bits)) {
    layout_.validate();
    if (bits_.size() != layout_.total_bits())
        throw InputError("tape: got " + std::to_string(bits_.size()) + " bits, layout needs " +
                         std::to_string(layout_.total_bits()));
    snapshot_ = bits_;
}

CatalyticTape CatalyticTape::from_seed(const TapeLayout& layout, std::uint64_t seed) {
    return CatalyticTape(layout, BitVec::from_seed(seed, layout.total_bits()));
}

CatalyticTape CatalyticTape::from_hex(const TapeLayout& layout, const std::string& hex) {
    return CatalyticTape(layout, BitVec::from_hex(hex, layout.total_bits()));
}

CatalyticTape CatalyticTape::zeros(const TapeLayout& layout) {
    return CatalyticTape(layout, BitVec::zeros(layout.total_bits()));
}

std::int64_t CatalyticTape::read_weight(int i) const {
    if (i < 0 || i >= layout_.num_weights) throw InputError("tape: weight index out of range");
    return static_cast<std::int64_t>(bits_.read_field(layout_.weight_offset(i), layout_.weight_bits));
}

void CatalyticTape::write_weight(int i, std::int64_t value) {
    if (i < 0 || i >= layout_.num_weights) throw InputError("tape: weight index out of range");
    if (value < 0 || (layout_.weight_bits < 63 && value >> layout_.weight_bits != 0))
        throw InputError("tape: weight " + std::to_string(value) + " does not fit in " +
                         std::to_string(layout_.weight_bits) + " bits");
    bits_.write_field(layout_.weight_offset(i), layout_.weight_bits,
                      static_cast<std::uint64_t>(value));
}

WeightAssignment CatalyticTape::read_weights() const {
    WeightAssignment w;
    w.bits = layout_.weight_bits;
    w.w.reserve(layout_.num_weights);
    for (int i = 0; i < layout_.num_weights; ++i) w.w.push_back(read_weight(i));
    return w;
}

std::int64_t CatalyticTape::read_reserve_raw(int i) const {
    if (i < 0 || i >= layout_.num_reserves)
        throw InputError("tape: reserve index out of range");
    return static_cast<std::int64_t>(bits_.read_field(layout_.reserve_offset(i), layout_.weight_bits));
}

void CatalyticTape::write_reserve_raw(int i, std::int64_t value) {
    if (i < 0 || i >= layout_.num_reserves)
        throw InputError("tape: reserve index out of range");
    if (value < 0 || (layout_.weight_bits < 63 && value >> layout_.weight_bits != 0))
        throw InputError("tape: reserve value " + std::to_string(value) + " does not fit in " +
                         std::to_string(layout_.weight_bits) + " bits");
    bits_.write_field(layout_.reserve_offset(i), layout_.weight_bits,
                      static_cast<std::uint64_t>(value));
}

void CatalyticTape::write_record(int i, const PackedRecord& rec) {
    if (i < 0 || i >= layout_.num_reserves)
        throw InternalError("tape: reserve index out of range");
    if (rec.k < 0 || rec.k > layout_.n) throw InternalError("tape: record k out of range");
    if (rec.u < 0 || rec.u >= layout_.n || rec.v < 0 || rec.v >= layout_.n)
        throw InternalError("tape: record endpoint out of range");
    std::size_t off = layout_.reserve_offset(i);
    bits_.write_field(off, layout_.k_bits(), static_cast<std::uint64_t>(rec.k));
    off += layout_.k_bits();
    bits_.write_field(off, layout_.vertex_bits(), static_cast<std::uint64_t>(rec.u));
    off += layout_.vertex_bits();
    bits_.write_field(off, layout_.vertex_bits(), static_cast<std::uint64_t>(rec.v));
    off += layout_.vertex_bits();
    for (int b = 0; b < layout_.padding_bits(); ++b) bits_.set(off + b, false);
}

PackedRecord CatalyticTape::read_record(int i, bool* padding_ok) const {
    if (i < 0 || i >= layout_.num_reserves)
        throw InternalError("tape: reserve index out of range");
    std::size_t off = layout_.reserve_offset(i);
    PackedRecord rec;
    rec.k = static_cast<int>(bits_.read_field(off, layout_.k_bits()));
    off += layout_.k_bits();
    rec.u = static_cast<int>(bits_.read_field(off, layout_.vertex_bits()));
    off += layout_.vertex_bits();
    rec.v = static_cast<int>(bits_.read_field(off, layout_.vertex_bits()));
    off += layout_.vertex_bits();
    if (padding_ok) {
        *padding_ok = true;
        for (int b = 0; b < layout_.padding_bits(); ++b)
            if (bits_.get(off + b)) *padding_ok = false;
    }
    return rec;
}

void CatalyticTape::account_free(int delta_bits) {
    freed_bits_ += delta_bits;
    if (freed_bits_ < 0) throw InternalError("tape: freed-bit accounting went negative");
    freed_bits_peak_ = std::max(freed_bits_peak_, freed_bits_);
}

} // namespace clmatch
