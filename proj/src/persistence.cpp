#include "dvr/persistence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "dvr/detail/modular.hpp"
#include "dvr/errors.hpp"

namespace dvr {

std::vector<PersistencePoint> PersistenceDiagram::in_dim(int dim) const {
    std::vector<PersistencePoint> out;
    for (const auto& p : points)
        if (p.dim == dim) out.push_back(p);
    return out;
}

std::size_t PersistenceDiagram::count_infinite(int dim) const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [dim](const auto& p) { return p.dim == dim && p.essential(); }));
}

std::vector<double> PersistenceDiagram::finite_lifetimes(int dim) const {
    std::vector<double> out;
    for (const auto& p : points)
        if (p.dim == dim && !p.essential()) out.push_back(p.lifetime());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

void PersistenceDiagram::sort() {
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
    });
}

bool is_prime(std::int64_t p) { return detail::is_prime(p); }

std::vector<std::size_t> order_simplices(const FilteredComplex& complex) {
    if (!validate_filtration(complex)) throw std::invalid_argument("order_simplices: invalid filtration");
    std::vector<std::size_t> order(complex.simplices.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& s = complex.simplices;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (s[a].value != s[b].value) return s[a].value < s[b].value;
        if (s[a].vertices.size() != s[b].vertices.size()) return s[a].vertices.size() < s[b].vertices.size();
        return s[a].vertices < s[b].vertices;
    });
    return order;
}

BoundaryMatrix build_boundary_matrix(const FilteredComplex& complex, const std::vector<std::size_t>& ordering,
                                     int field) {
    if (!detail::is_prime(field)) throw std::invalid_argument("field characteristic must be prime");
    BoundaryMatrix bm;
    bm.field = field;
    std::map<std::vector<Vertex>, std::size_t> position;
    for (std::size_t pos = 0; pos < ordering.size(); ++pos) position[complex.simplices[ordering[pos]].vertices] = pos;
    bm.dims.reserve(ordering.size());
    bm.columns.reserve(ordering.size());
    std::vector<Vertex> face;
    for (std::size_t idx : ordering) {
        const auto& simplex = complex.simplices[idx];
        bm.dims.push_back(simplex.dim());
        std::vector<BoundaryEntry> column;
        if (simplex.vertices.size() > 1) {
            for (std::size_t drop = 0; drop < simplex.vertices.size(); ++drop) {
                face = simplex.vertices;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                const std::int64_t sign = (drop % 2 == 0) ? 1 : field - 1;
                column.push_back({position.at(face), sign});
            }
            std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
        }
        bm.columns.push_back(std::move(column));
    }
    return bm;
}

namespace {

// column <- column + factor * other, both sorted by row.
void add_scaled(std::vector<BoundaryEntry>& column, const std::vector<BoundaryEntry>& other, std::int64_t factor,
                std::int64_t p, std::vector<BoundaryEntry>& scratch) {
    scratch.clear();
    auto a = column.begin();
    auto b = other.begin();
    while (a != column.end() || b != other.end()) {
        if (b == other.end() || (a != column.end() && a->row < b->row)) {
            scratch.push_back(*a++);
        } else if (a == column.end() || b->row < a->row) {
            scratch.push_back({b->row, (b->coeff * factor) % p});
            ++b;
        } else {
            const std::int64_t c = (a->coeff + b->coeff * factor) % p;
            if (c != 0) scratch.push_back({a->row, c});
            ++a;
            ++b;
        }
    }
    column.swap(scratch);
}

}  // namespace

Reduction reduce(BoundaryMatrix matrix, int field) {
    if (!detail::is_prime(field)) throw std::invalid_argument("reduce: field characteristic must be prime");
    const std::int64_t p = field;
    const std::size_t n = matrix.columns.size();
    for (auto& column : matrix.columns)
        for (auto& e : column) e.coeff = ((e.coeff % p) + p) % p;

    Reduction out;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_owner(n, kNone);  // row -> column with that low
    std::vector<bool> cleared(n, false);
    std::vector<bool> is_birth(n, false);
    std::vector<BoundaryEntry> scratch;
    const int top = matrix.dims.empty() ? 0 : *std::max_element(matrix.dims.begin(), matrix.dims.end());
    for (int dim = top; dim >= 1; --dim) {
        for (std::size_t j = 0; j < n; ++j) {
            if (matrix.dims[j] != dim) continue;
            auto& column = matrix.columns[j];
            if (cleared[j]) {
                column.clear();
                continue;
            }
            while (!column.empty()) {
                const auto low = column.back();
                const std::size_t owner = pivot_owner[low.row];
                if (owner == kNone) break;
                const std::int64_t other = matrix.columns[owner].back().coeff;
                const std::int64_t factor = (p - low.coeff) * detail::mod_inverse(other, p) % p;
                add_scaled(column, matrix.columns[owner], factor, p, scratch);
            }
            if (!column.empty()) {
                const std::size_t low = column.back().row;
                pivot_owner[low] = j;
                cleared[low] = true;
                is_birth[low] = true;
                out.pairs.emplace_back(low, j);
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (matrix.columns[j].empty() && !is_birth[j]) out.essential.push_back(j);
    std::sort(out.pairs.begin(), out.pairs.end());
    out.reduced = std::move(matrix);
    return out;
}

PersistenceDiagram extract_diagram(const Reduction& reduction, const std::vector<std::size_t>& ordering,
                                   const FilteredComplex& complex, int max_dim) {
    PersistenceDiagram dgm;
    dgm.field = reduction.reduced.field;
    dgm.max_dim = max_dim;
    auto simplex_at = [&](std::size_t pos) -> const Simplex& { return complex.simplices[ordering[pos]]; };
    for (const auto& [b, d] : reduction.pairs) {
        const auto& birth = simplex_at(b);
        const auto& death = simplex_at(d);
        if (birth.dim() > max_dim || !(death.value > birth.value)) continue;
        dgm.points.push_back({birth.dim(), birth.value, death.value});
    }
    for (std::size_t e : reduction.essential) {
        const auto& s = simplex_at(e);
        if (s.dim() <= max_dim) dgm.points.push_back({s.dim(), s.value, kInfinity});
    }
    dgm.sort();
    return dgm;
}

PersistenceDiagram compute_persistence(const FilteredComplex& complex, int max_dim, int field) {
    const auto ordering = order_simplices(complex);
    auto reduction = reduce(build_boundary_matrix(complex, ordering, field), field);
    return extract_diagram(reduction, ordering, complex, max_dim);
}

namespace {

// Rank of a dense matrix over Z/pZ (rows x cols, row-major), destroys input.
std::size_t dense_rank(std::vector<std::int64_t>& m, std::size_t rows, std::size_t cols, std::int64_t p) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t k = 0; k < cols; ++k) std::swap(m[piv * cols + k], m[rank * cols + k]);
        const std::int64_t inv = detail::mod_inverse(m[rank * cols + c], p);
        for (std::size_t k = c; k < cols; ++k) m[rank * cols + k] = m[rank * cols + k] * inv % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r * cols + c] == 0) continue;
            const std::int64_t f = m[r * cols + c];
            for (std::size_t k = c; k < cols; ++k) m[r * cols + k] = ((m[r * cols + k] - f * m[rank * cols + k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Rank of the boundary map from `dim`-simplices to (dim-1)-simplices.
std::size_t boundary_rank(const std::vector<const Simplex*>& simplices, int dim, std::int64_t p) {
    if (dim < 1) return 0;
    std::map<std::vector<Vertex>, std::size_t> row_of;
    std::vector<const Simplex*> cols;
    for (const auto* s : simplices) {
        if (s->dim() == dim - 1) row_of.emplace(s->vertices, row_of.size());
        if (s->dim() == dim) cols.push_back(s);
    }
    if (cols.empty() || row_of.empty()) return 0;
    const std::size_t rows = row_of.size();
    std::vector<std::int64_t> m(rows * cols.size(), 0);
    std::vector<Vertex> face;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& v = cols[c]->vertices;
        for (std::size_t drop = 0; drop < v.size(); ++drop) {
            face = v;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            m[row_of.at(face) * cols.size() + c] = (drop % 2 == 0) ? 1 : p - 1;
        }
    }
    return dense_rank(m, rows, cols.size(), p);
}

}  // namespace

std::size_t betti_at(const FilteredComplex& complex, double level, int dim, int field, std::size_t max_simplices) {
    if (!detail::is_prime(field)) throw std::invalid_argument("betti_at: field characteristic must be prime");
    if (dim < 0) throw std::invalid_argument("betti_at: dimension must be >= 0");
    std::vector<const Simplex*> sub;
    for (const auto& s : complex.simplices)
        if (s.value <= level) sub.push_back(&s);
    if (sub.size() > max_simplices)
        throw NumericError("betti_at: subcomplex has " + std::to_string(sub.size()) + " simplices, oracle limit is " +
                           std::to_string(max_simplices));
    const auto chains = static_cast<std::size_t>(
        std::count_if(sub.begin(), sub.end(), [dim](const Simplex* s) { return s->dim() == dim; }));
    return chains - boundary_rank(sub, dim, field) - boundary_rank(sub, dim + 1, field);
}

}  // namespace dvr
