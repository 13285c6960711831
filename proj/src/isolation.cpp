#include "clmatch/isolation.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace clmatch {

namespace {

constexpr std::int64_t kMaxWeightProduct = std::int64_t{1} << 62;
// Refusal threshold for determinant work: matrix dimension times the largest
// exponent, in bits. Beyond this the backend errors out instead of grinding.
constexpr std::int64_t kMaxDetBits = 8'000'000;

std::int64_t top_sum(std::vector<std::int64_t> values, int count) {
    std::sort(values.begin(), values.end(), std::greater<>());
    std::int64_t s = 0;
    for (int i = 0; i < count && i < static_cast<int>(values.size()); ++i) s += values[i];
    return s;
}

} // namespace

ExtendedGraph extend_to_perfect(const BipartiteGraph& g, int k,
                                const std::vector<std::int64_t>& w, bool coarse_scale) {
    int n = g.n();
    if (k < 0 || k > n) throw InputError("extend_to_perfect: k out of [0, n]");
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("extend_to_perfect: weight vector length mismatch");
    for (std::int64_t x : w)
        if (x < 0) throw InputError("extend_to_perfect: negative weight");

    int fresh = n - k;
    int np = 2 * n - k;

    // Global 1-based indices: left originals 1..n, left new n+1..2n-k,
    // right originals 2n-k+1..3n-k, right new 3n-k+1..2(2n-k).
    ExtendedGraph ext{BipartiteGraph(1, {}), {}, k, n, 1, {}, {}, {}};
    ext.left_global.resize(np);
    ext.right_global.resize(np);
    for (int i = 0; i < n; ++i) ext.left_global[i] = i + 1;
    for (int t = 0; t < fresh; ++t) ext.left_global[n + t] = n + t + 1;
    for (int i = 0; i < n; ++i) ext.right_global[i] = 2 * n - k + i + 1;
    for (int t = 0; t < fresh; ++t) ext.right_global[n + t] = 3 * n - k + t + 1;

    std::vector<std::int64_t> left_clique, right_clique; // all possible clique edge weights
    for (int u = 0; u < n; ++u)
        for (int t = 0; t < fresh; ++t)
            left_clique.push_back(ext.left_global[u] * ext.right_global[n + t]);
    for (int v = 0; v < n; ++v)
        for (int t = 0; t < fresh; ++t)
            right_clique.push_back(ext.right_global[v] * ext.left_global[n + t]);

    std::int64_t scale;
    if (coarse_scale) {
        scale = 10LL * n * n * n * n;
    } else {
        // Any extension uses exactly n-k edges from each clique, so the sum of
        // the n-k heaviest edges per clique bounds its total clique weight.
        std::int64_t bound = top_sum(left_clique, fresh) + top_sum(right_clique, fresh);
        scale = bound + 1;
    }
    ext.scale = scale;

    struct Raw {
        Edge e;
        std::int64_t w;
        int orig;
    };
    std::vector<Raw> raw;
    for (int id = 0; id < g.m(); ++id) {
        Edge e = g.edge(id);
        if (w[id] > kMaxWeightProduct / scale)
            throw InputError("extend_to_perfect: weight times scale overflows");
        raw.push_back({Edge{e.u, e.v}, w[id] * scale, id});
    }
    for (int u = 0; u < n; ++u)
        for (int t = 0; t < fresh; ++t)
            raw.push_back({Edge{u, n + t}, ext.left_global[u] * ext.right_global[n + t], -1});
    for (int v = 0; v < n; ++v)
        for (int t = 0; t < fresh; ++t)
            raw.push_back({Edge{n + t, v}, ext.left_global[n + t] * ext.right_global[v], -1});

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const Raw& r : raw) edges.push_back(r.e);
    ext.graph = BipartiteGraph(np, std::move(edges));
    ext.weights.assign(ext.graph.m(), 0);
    ext.orig_edge.assign(ext.graph.m(), -1);
    for (const Raw& r : raw) {
        int id = *ext.graph.edge_id(r.e.u, r.e.v);
        ext.weights[id] = r.w;
        ext.orig_edge[id] = r.orig;
    }
    return ext;
}

std::vector<std::pair<std::int64_t, std::int64_t>> clique_unique_matching(
    const std::vector<std::int64_t>& left_indices,
    const std::vector<std::int64_t>& right_indices) {
    if (left_indices.size() != right_indices.size())
        throw InputError("clique_unique_matching: side size mismatch");
    auto sorted_strict = [](const std::vector<std::int64_t>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i - 1] >= v[i]) return false;
        return true;
    };
    if (!sorted_strict(left_indices) || !sorted_strict(right_indices))
        throw InputError("clique_unique_matching: indices must be sorted strictly increasing");
    std::size_t s = left_indices.size();
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(s);
    for (std::size_t i = 0; i < s; ++i)
        out.emplace_back(left_indices[i], right_indices[s - 1 - i]);
    return out;
}

namespace {

// --- determinant backend ------------------------------------------------

struct EdmondsResult {
    mpz_class det;
    // 2-adic valuation of the (j,i) adjugate entry per edge, -1 when zero.
    std::vector<std::int64_t> minor_val;
};

std::int64_t v2(const mpz_class& x) {
    if (sgn(x) == 0) return -1;
    return static_cast<std::int64_t>(mpz_scan1(x.get_mpz_t(), 0));
}

// det(N) and all adjugate entries, fraction-free. Forward pass is one-step
// Bareiss on [N | I]: every intermediate entry is a minor of the input, and
// each division by the previous pivot is exact, so no rational arithmetic or
// gcd canonicalization ever happens. Back-substitution then solves
// U x = det * (transformed I) column by column; by Cramer x is the adjugate
// column, integral, and every division by a leading minor is again exact.
EdmondsResult edmonds_minors(const BipartiteGraph& g, const std::vector<std::int64_t>& w) {
    int n = g.n();
    std::int64_t max_w = 0;
    for (std::int64_t x : w) max_w = std::max(max_w, x);
    if (static_cast<std::int64_t>(n) * (max_w + 1) > kMaxDetBits)
        throw InputError("determinant backend: weights too large; matrix exponents exceed " +
                         std::to_string(kMaxDetBits) + " bits");

    // m[r] = row r of [N | I], 2n entries.
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(2 * n, 0));
    for (int id = 0; id < g.m(); ++id) {
        Edge e = g.edge(id);
        mpz_class p = 1;
        p <<= static_cast<unsigned long>(w[id]);
        m[e.u][e.v] = p;
    }
    for (int i = 0; i < n; ++i) m[i][n + i] = 1;

    int sign = 1;
    mpz_class prev = 1;
    for (int p = 0; p < n; ++p) {
        int pivot = -1;
        for (int r = p; r < n; ++r)
            if (sgn(m[r][p]) != 0) {
                pivot = r;
                break;
            }
        if (pivot == -1) return {mpz_class(0), {}}; // singular
        if (pivot != p) {
            std::swap(m[pivot], m[p]);
            sign = -sign;
        }
        for (int r = p + 1; r < n; ++r) {
            for (int c = p + 1; c < 2 * n; ++c) {
                mpz_class t = m[p][p] * m[r][c];
                if (sgn(m[r][p]) != 0 && sgn(m[p][c]) != 0) t -= m[r][p] * m[p][c];
                mpz_divexact(m[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][p] = 0;
        }
        prev = m[p][p];
    }

    EdmondsResult res;
    res.det = sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];

    // adj[i][j] per column j; the division by the diagonal minor must come
    // out exact, anything else is an elimination bug.
    std::vector<std::vector<mpz_class>> adj(n, std::vector<mpz_class>(n, 0));
    mpz_class num, q, rem;
    for (int j = 0; j < n; ++j) {
        for (int i = n - 1; i >= 0; --i) {
            num = res.det * m[i][n + j];
            for (int c = i + 1; c < n; ++c)
                if (sgn(m[i][c]) != 0 && sgn(adj[c][j]) != 0) num -= m[i][c] * adj[c][j];
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), m[i][i].get_mpz_t());
            if (sgn(rem) != 0) throw InternalError("edmonds_minors: inexact adjugate division");
            adj[i][j] = q;
        }
    }

    res.minor_val.assign(g.m(), -1);
    for (int id = 0; id < g.m(); ++id) {
        Edge e = g.edge(id);
        // adj = det * N^{-1}; adj[v][u] = +-det(minor at (u, v)).
        res.minor_val[id] = v2(adj[e.v][e.u]);
    }
    return res;
}

Matching extract_perfect_determinant(const BipartiteGraph& g, const std::vector<std::int64_t>& w) {
    int n = g.n();
    EdmondsResult em = edmonds_minors(g, w);
    if (sgn(em.det) == 0)
        throw PromiseViolation("determinant backend: det(N) = 0, no isolated perfect matching");
    std::int64_t wstar = v2(em.det);

    Matching m;
    std::int64_t weight = 0;
    for (int id = 0; id < g.m(); ++id) {
        if (em.minor_val[id] < 0) continue; // minor vanished: edge in no contributing matching
        std::int64_t val = em.minor_val[id] + w[id];
        if (val < wstar)
            throw PromiseViolation(
                "determinant backend: edge term with valuation below det's, weights do not "
                "isolate");
        if (val == wstar) {
            m.push_back(id);
            weight += w[id];
        }
    }

    std::vector<char> left(n, 0), right(n, 0);
    for (int id : m) {
        Edge e = g.edge(id);
        if (left[e.u] || right[e.v])
            throw PromiseViolation("determinant backend: odd-parity edge set is not a matching");
        left[e.u] = right[e.v] = 1;
    }
    if (static_cast<int>(m.size()) != n)
        throw PromiseViolation("determinant backend: odd-parity edge set is not perfect");
    if (weight != wstar)
        throw PromiseViolation("determinant backend: extracted matching weight differs from the "
                               "determinant's 2-adic valuation");
    return m;
}

// Unique-minimum certificate. The determinant output checks alone cannot see
// every weight tie: signed terms can cancel, and after the clique extension
// the index products tie-break ties in the original weights, so W' can
// isolate the extension even though W does not isolate. The permanent with
// entries 2^(sbits*w(e)) has no signs: writing perm = sum_t c_t * 2^(sbits*t),
// c_t counts the perfect matchings of total weight t, and with the total
// matching count below 2^sbits the classes occupy disjoint bit windows, so
// the lowest nonzero window holds the exact number of minimum-weight perfect
// matchings. The promise holds iff that count equals `expected` (1 for a
// plain graph, ((n-k)!)^2 per original matching after the clique extension,
// because every size-k matching completes through the cliques in exactly that
// many ways). Returns the minimum weight.
std::int64_t certify_unique_minimum(const BipartiteGraph& g, const std::vector<std::int64_t>& w,
                                    const mpz_class& expected, const std::string& kind) {
    int n = g.n();
    if (n > 16)
        throw InputError("determinant backend: isolation certificate needs 2^" +
                         std::to_string(n) + " permanent terms; graph too large");
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    auto sbits = static_cast<std::int64_t>(mpz_sizeinbase(fact.get_mpz_t(), 2));
    std::int64_t max_w = 0;
    for (std::int64_t x : w) max_w = std::max(max_w, x);
    if (max_w + 1 > kMaxDetBits / n / sbits)
        throw InputError("determinant backend: weights too large; permanent exponents exceed " +
                         std::to_string(kMaxDetBits) + " bits");

    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n, 0));
    for (int id = 0; id < g.m(); ++id) {
        Edge e = g.edge(id);
        mpz_class p = 1;
        p <<= static_cast<unsigned long>(sbits * w[id]);
        a[e.u][e.v] = p;
    }

    // Ryser with Gray-code column flips:
    // perm(A) = (-1)^n sum_{S != 0} (-1)^{|S|} prod_i sum_{j in S} a[i][j].
    std::vector<mpz_class> row(n);
    mpz_class perm = 0, prod;
    std::uint32_t gray = 0;
    int popcnt = 0;
    for (std::uint64_t it = 1; it < (std::uint64_t{1} << n); ++it) {
        auto g2 = static_cast<std::uint32_t>(it ^ (it >> 1));
        std::uint32_t flip = g2 ^ gray;
        int j = std::countr_zero(flip);
        if (g2 & flip) {
            for (int i = 0; i < n; ++i) row[i] += a[i][j];
            ++popcnt;
        } else {
            for (int i = 0; i < n; ++i) row[i] -= a[i][j];
            --popcnt;
        }
        gray = g2;
        prod = row[0];
        for (int i = 1; i < n && sgn(prod) != 0; ++i) prod *= row[i];
        if ((n - popcnt) % 2 == 0)
            perm += prod;
        else
            perm -= prod;
    }

    if (sgn(perm) < 0) throw InternalError("certify_unique_minimum: negative permanent");
    if (sgn(perm) == 0) throw PromiseViolation("determinant backend: no " + kind + " exists");
    std::int64_t t0 = v2(perm) / sbits;
    mpz_class mask = 1;
    mask <<= static_cast<unsigned long>(sbits);
    mask -= 1;
    mpz_class cnt = (perm >> static_cast<unsigned long>(sbits * t0)) & mask;
    if (cnt < expected || cnt % expected != 0)
        throw InternalError(
            "certify_unique_minimum: class count is not a multiple of the completion count");
    mpz_class mult = cnt / expected;
    if (mult != 1)
        throw PromiseViolation("determinant backend: " + mult.get_str() + " minimum-weight " +
                               kind + "s, weights do not isolate");
    return t0;
}

// --- combinatorial backend ----------------------------------------------

// Own lightweight enumeration; intentionally not shared with the oracle so the
// two verification routes stay separate.
struct MinScan {
    std::int64_t best = 0;
    std::int64_t count = 0;
    Matching first, second;
};

void scan_matchings(const BipartiteGraph& g, int target, int from, std::vector<char>& left,
                    std::vector<char>& right, Matching& cur, std::int64_t cur_w,
                    const std::vector<std::int64_t>& w, MinScan& out) {
    if (static_cast<int>(cur.size()) == target) {
        if (out.count == 0 || cur_w < out.best) {
            out.best = cur_w;
            out.count = 1;
            out.first = cur;
            out.second.clear();
        } else if (cur_w == out.best) {
            ++out.count;
            if (out.second.empty()) out.second = cur;
        }
        return;
    }
    int need = target - static_cast<int>(cur.size());
    if (g.m() - from < need) return;
    for (int id = from; id < g.m(); ++id) {
        Edge e = g.edge(id);
        if (left[e.u] || right[e.v]) continue;
        left[e.u] = right[e.v] = 1;
        cur.push_back(id);
        scan_matchings(g, target, id + 1, left, right, cur, cur_w + w[id], w, out);
        cur.pop_back();
        left[e.u] = right[e.v] = 0;
    }
}

std::string matching_str(const BipartiteGraph& g, const Matching& m) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        Edge e = g.edge(m[i]);
        s += (i ? ", (" : "(") + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    }
    return s + "}";
}

Matching extract_size_k_combinatorial(const BipartiteGraph& g, int k,
                                      const std::vector<std::int64_t>& w) {
    MinScan scan;
    std::vector<char> left(g.n(), 0), right(g.n(), 0);
    Matching cur;
    scan_matchings(g, k, 0, left, right, cur, 0, w, scan);
    if (scan.count == 0)
        throw PromiseViolation("combinatorial backend: no size-" + std::to_string(k) +
                               " matching exists");
    if (scan.count > 1)
        throw PromiseViolation("combinatorial backend: " + std::to_string(scan.count) +
                               " minimum-weight size-" + std::to_string(k) + " matchings, e.g. " +
                               matching_str(g, scan.first) + " and " +
                               matching_str(g, scan.second));
    return scan.first;
}

} // namespace

Matching extract_isolated_perfect(const BipartiteGraph& g, const std::vector<std::int64_t>& w,
                                  Backend backend) {
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("extract_isolated_perfect: weight vector length mismatch");
    for (std::int64_t x : w)
        if (x < 0) throw InputError("extract_isolated_perfect: negative weight");
    if (backend == Backend::Determinant) {
        std::int64_t wmin = certify_unique_minimum(g, w, 1, "perfect matching");
        Matching m = extract_perfect_determinant(g, w);
        if (matching_weight(m, w) != wmin)
            throw InternalError("extract_isolated_perfect: extraction weight differs from the "
                                "isolation certificate");
        return m;
    }
    return extract_size_k_combinatorial(g, g.n(), w);
}

Matching extract_isolated_size_k(const BipartiteGraph& g, int k,
                                 const std::vector<std::int64_t>& w, Backend backend,
                                 bool coarse_scale) {
    if (k < 0 || k > g.n()) throw InputError("extract_isolated_size_k: k out of [0, n]");
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("extract_isolated_size_k: weight vector length mismatch");
    for (std::int64_t x : w)
        if (x < 0) throw InputError("extract_isolated_size_k: negative weight");

    if (backend == Backend::Combinatorial) return extract_size_k_combinatorial(g, k, w);

    ExtendedGraph ext = extend_to_perfect(g, k, w, coarse_scale);

    // Certify the promise on the extension before trusting the extraction.
    // Clique edges enter the certificate weightless, so each size-k matching
    // of weight t contributes exactly ((n-k)!)^2 perfect matchings to class t.
    std::vector<std::int64_t> lifted(ext.graph.m(), 0);
    for (int id = 0; id < ext.graph.m(); ++id)
        if (ext.orig_edge[id] >= 0) lifted[id] = w[ext.orig_edge[id]];
    mpz_class expected;
    mpz_fac_ui(expected.get_mpz_t(), static_cast<unsigned long>(g.n() - k));
    expected *= expected;
    std::int64_t wmin = certify_unique_minimum(ext.graph, lifted, expected,
                                               "size-" + std::to_string(k) + " matching");

    Matching mp = extract_perfect_determinant(ext.graph, ext.weights);
    Matching m;
    for (int id : mp)
        if (ext.orig_edge[id] >= 0) m.push_back(ext.orig_edge[id]);
    std::sort(m.begin(), m.end());
    if (static_cast<int>(m.size()) != k)
        throw InternalError("extract_isolated_size_k: extension restriction has wrong size");
    if (!validate_matching(g, m))
        throw InternalError("extract_isolated_size_k: extension restriction is not a matching");
    if (matching_weight(m, w) != wmin)
        throw InternalError("extract_isolated_size_k: extraction weight differs from the "
                            "isolation certificate");
    return m;
}

} // namespace clmatch
