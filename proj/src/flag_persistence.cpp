// Persistent homology of clique filtrations by reducing the coboundary matrix
// one dimension at a time. Simplices are addressed through the combinatorial
// number system, so only columns that actually need reduction are ever
// materialised. Barcodes of cohomology and homology coincide over a field.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "dvr/detail/modular.hpp"
#include "dvr/detail/union_find.hpp"
#include "dvr/persistence.hpp"

namespace dvr {

namespace {

using Index = std::uint64_t;
using Coeff = std::int64_t;

struct Entry {
    double diameter;
    Index index;
    Coeff coeff;
};

// Filtration order within one dimension: diameter ascending, then index descending.
// `later(a, b)` is true when a comes after b; as a heap comparator it puts the
// earliest simplex on top.
struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
        return a.diameter > b.diameter || (a.diameter == b.diameter && a.index < b.index);
    }
};

using EntryHeap = std::priority_queue<Entry, std::vector<Entry>, Later>;

class BinomialTable {
public:
    BinomialTable(std::size_t n, std::size_t k) : k_(k + 1), table_((n + 1) * (k + 1), 0) {
        constexpr Index kMax = std::numeric_limits<Index>::max() / 2;
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (std::size_t j = 1; j <= std::min(i, k); ++j) {
                const Index v = at(i - 1, j - 1) + (j < i ? at(i - 1, j) : 0);
                if (v > kMax) throw std::overflow_error("flag_persistence: simplex index overflow");
                at(i, j) = v;
            }
        }
    }
    Index operator()(std::size_t n, std::size_t k) const { return k < k_ ? table_[n * k_ + k] : 0; }

private:
    Index& at(std::size_t n, std::size_t k) { return table_[n * k_ + k]; }
    std::size_t k_;
    std::vector<Index> table_;
};

class FlagReducer {
public:
    FlagReducer(const FlagFiltration& flag, int max_dim, Coeff p)
        : flag_(flag), n_(flag.size()), max_dim_(max_dim), p_(p), binom_(flag.size(), static_cast<std::size_t>(max_dim) + 2) {}

    PersistenceDiagram run() {
        PersistenceDiagram dgm;
        dgm.field = static_cast<int>(p_);
        dgm.max_dim = max_dim_;
        if (n_ == 0) return dgm;

        std::vector<Entry> simplices;
        std::vector<Entry> columns;
        compute_dim0(dgm, simplices, columns);
        for (int dim = 1; dim <= max_dim_; ++dim) {
            pivots_.clear();
            reduction_.clear();
            compute_pairs(dim, columns, dgm);
            if (dim < max_dim_) assemble_next(dim, simplices, columns);
        }
        dgm.sort();
        return dgm;
    }

private:
    double vertex_value(std::size_t v) const { return flag_.vertex_values[v]; }
    double edge_value(std::size_t a, std::size_t b) const { return flag_.edge_values(a, b); }

    // Vertices of a simplex, largest first.
    void vertices_of(Index idx, int dim, std::vector<std::size_t>& out) const {
        out.resize(static_cast<std::size_t>(dim) + 1);
        std::size_t top = n_;
        for (int k = dim + 1; k >= 1; --k) {
            // Largest v < top with C(v, k) <= idx.
            std::size_t lo = static_cast<std::size_t>(k) - 1, hi = top;
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (binom_(mid, static_cast<std::size_t>(k)) <= idx) lo = mid;
                else hi = mid;
            }
            out[static_cast<std::size_t>(dim + 1 - k)] = lo;
            idx -= binom_(lo, static_cast<std::size_t>(k));
            top = lo;
        }
    }

    void compute_dim0(PersistenceDiagram& dgm, std::vector<Entry>& edges, std::vector<Entry>& columns) {
        edges.clear();
        for (std::size_t j = 1; j < n_; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                if (!flag_.has_edge(i, j)) continue;
                const double d = std::max({edge_value(i, j), vertex_value(i), vertex_value(j)});
                if (d > flag_.cap) continue;
                edges.push_back({d, binom_(j, 2) + binom_(i, 1), 1});
            }
        std::sort(edges.begin(), edges.end(), [](const Entry& a, const Entry& b) { return Later{}(b, a); });

        // Elder rule: the component whose oldest vertex is younger dies.
        detail::UnionFind uf(n_);
        std::vector<std::size_t> eldest(n_);
        for (std::size_t v = 0; v < n_; ++v) eldest[v] = v;
        auto older = [&](std::size_t a, std::size_t b) {
            return vertex_value(a) < vertex_value(b) || (vertex_value(a) == vertex_value(b) && a > b);
        };
        std::vector<std::size_t> verts;
        columns.clear();
        for (const auto& e : edges) {
            vertices_of(e.index, 1, verts);
            const std::size_t ra = uf.find(verts[0]);
            const std::size_t rb = uf.find(verts[1]);
            if (ra == rb) {
                columns.push_back(e);
                continue;
            }
            const std::size_t ea = eldest[ra], eb = eldest[rb];
            const std::size_t survivor = older(ea, eb) ? ea : eb;
            const std::size_t victim = survivor == ea ? eb : ea;
            if (e.diameter > vertex_value(victim)) dgm.points.push_back({0, vertex_value(victim), e.diameter});
            uf.unite(ra, rb);
            eldest[uf.find(ra)] = survivor;
        }
        for (std::size_t v = 0; v < n_; ++v)
            if (uf.find(v) == v && vertex_value(eldest[v]) <= flag_.cap)
                dgm.points.push_back({0, vertex_value(eldest[v]), kInfinity});
        std::reverse(columns.begin(), columns.end());  // reduce latest first
    }

    // Cofacets of a simplex in decreasing index order.
    class Coboundary {
    public:
        Coboundary(const FlagReducer& r, const Entry& simplex, int dim)
            : r_(r), simplex_(simplex), idx_below_(simplex.index), idx_above_(0),
              v_(static_cast<std::ptrdiff_t>(r.n_) - 1), k_(dim + 1) {
            r.vertices_of(simplex.index, dim, verts_);
        }

        // With all = false only cofacets whose new vertex exceeds every vertex of the simplex.
        bool has_next(bool all = true) const {
            return v_ >= k_ && (all || r_.binom_(static_cast<std::size_t>(v_), static_cast<std::size_t>(k_)) > idx_below_);
        }

        Entry next() {
            while (r_.binom_(static_cast<std::size_t>(v_), static_cast<std::size_t>(k_)) <= idx_below_) {
                idx_below_ -= r_.binom_(static_cast<std::size_t>(v_), static_cast<std::size_t>(k_));
                idx_above_ += r_.binom_(static_cast<std::size_t>(v_), static_cast<std::size_t>(k_) + 1);
                --v_;
                --k_;
            }
            const auto v = static_cast<std::size_t>(v_);
            double diameter = std::max(simplex_.diameter, r_.vertex_value(v));
            bool present = true;
            for (std::size_t w : verts_) {
                if (!r_.flag_.has_edge(v, w)) {
                    present = false;
                    break;
                }
                diameter = std::max(diameter, r_.edge_value(v, w));
            }
            const Index index = idx_above_ + r_.binom_(v, static_cast<std::size_t>(k_) + 1) + idx_below_;
            const Coeff sign = (k_ & 1) ? r_.p_ - 1 : 1;
            --v_;
            if (!present) diameter = kInfinity;
            return {diameter, index, sign * simplex_.coeff % r_.p_};
        }

    private:
        const FlagReducer& r_;
        Entry simplex_;
        Index idx_below_;
        Index idx_above_;
        std::ptrdiff_t v_;
        std::ptrdiff_t k_;
        std::vector<std::size_t> verts_;
    };

    // Pop the earliest nonzero entry of a heap, merging duplicates. The pivot
    // is pushed back so the heap still represents the full column.
    bool pop_pivot(EntryHeap& heap, Entry& pivot) const {
        while (!heap.empty()) {
            pivot = heap.top();
            heap.pop();
            while (!heap.empty() && heap.top().index == pivot.index) {
                pivot.coeff = (pivot.coeff + heap.top().coeff) % p_;
                heap.pop();
            }
            if (pivot.coeff != 0) return true;
        }
        return false;
    }

    bool get_pivot(EntryHeap& heap, Entry& pivot) const {
        if (!pop_pivot(heap, pivot)) return false;
        heap.push(pivot);
        return true;
    }

    void push_coboundary(const Entry& simplex, int dim, Coeff factor, EntryHeap& heap) const {
        Entry scaled = simplex;
        scaled.coeff = simplex.coeff * factor % p_;
        Coboundary cob(*this, scaled, dim);
        while (cob.has_next()) {
            const Entry c = cob.next();
            if (flag_.admits(c.diameter)) heap.push(c);
        }
    }

    // Returns true and sets pivot if the column has a nonzero entry. May stop
    // early when the first cofacet forms an emergent pair.
    bool init_column(const Entry& column, int dim, EntryHeap& heap, Entry& pivot) const {
        Coboundary cob(*this, column, dim);
        bool check_emergent = true;
        while (cob.has_next()) {
            const Entry c = cob.next();
            if (!flag_.admits(c.diameter)) continue;
            if (check_emergent && c.diameter == column.diameter) {
                if (pivots_.find(c.index) == pivots_.end()) {
                    pivot = c;
                    return true;
                }
                check_emergent = false;
            }
            heap.push(c);
        }
        return get_pivot(heap, pivot);
    }

    void compute_pairs(int dim, const std::vector<Entry>& columns, PersistenceDiagram& dgm) {
        reduction_.resize(columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const Entry column{columns[j].diameter, columns[j].index, 1};
            EntryHeap cob_heap;
            EntryHeap red_heap;
            red_heap.push(column);
            Entry pivot{};
            bool has = init_column(column, dim, cob_heap, pivot);
            while (has) {
                const auto it = pivots_.find(pivot.index);
                if (it == pivots_.end()) break;
                const auto [other, other_coeff] = it->second;
                const Coeff factor = (p_ - pivot.coeff) * detail::mod_inverse(other_coeff, p_) % p_;
                const Entry other_col{columns[other].diameter, columns[other].index, 1};
                red_heap.push({other_col.diameter, other_col.index, factor});
                push_coboundary(other_col, dim, factor, cob_heap);
                for (const Entry& e : reduction_[other]) {
                    const Entry scaled{e.diameter, e.index, e.coeff * factor % p_};
                    red_heap.push(scaled);
                    push_coboundary(e, dim, factor, cob_heap);
                }
                has = get_pivot(cob_heap, pivot);
            }
            if (has) {
                pivots_.emplace(pivot.index, std::pair{j, pivot.coeff});
                if (pivot.diameter > column.diameter) dgm.points.push_back({dim, column.diameter, pivot.diameter});
                // Store the reduction column without the column itself.
                Entry e;
                while (pop_pivot(red_heap, e))
                    if (e.index != column.index) reduction_[j].push_back(e);
            } else {
                dgm.points.push_back({dim, column.diameter, kInfinity});
            }
        }
    }

    // Columns for dimension dim+1: all (dim+1)-simplices within the cap that
    // were not pivots in dimension dim.
    void assemble_next(int dim, std::vector<Entry>& simplices, std::vector<Entry>& columns) const {
        std::vector<Entry> next;
        for (const Entry& s : simplices) {
            Coboundary cob(*this, s, dim);
            while (cob.has_next(false)) {
                Entry c = cob.next();
                if (!flag_.admits(c.diameter)) continue;
                c.coeff = 1;
                next.push_back(c);
            }
        }
        simplices = next;
        columns.clear();
        for (const Entry& c : next)
            if (pivots_.find(c.index) == pivots_.end()) columns.push_back(c);
        std::sort(columns.begin(), columns.end(), Later{});
    }

    const FlagFiltration& flag_;
    std::size_t n_;
    int max_dim_;
    Coeff p_;
    BinomialTable binom_;
    std::unordered_map<Index, std::pair<std::size_t, Coeff>> pivots_;
    std::vector<std::vector<Entry>> reduction_;
};

}  // namespace

PersistenceDiagram flag_persistence(const FlagFiltration& flag, int max_dim, int field) {
    if (!detail::is_prime(field)) throw std::invalid_argument("flag_persistence: field characteristic must be prime");
    if (max_dim < 0) throw std::invalid_argument("flag_persistence: max_dim must be >= 0");
    if (flag.edge_values.size() != flag.size()) throw std::invalid_argument("flag_persistence: size mismatch");
    return FlagReducer(flag, max_dim, field).run();
}

}  // namespace dvr
