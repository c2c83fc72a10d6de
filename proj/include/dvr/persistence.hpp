#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dvr/filtration.hpp"

namespace dvr {

struct PersistencePoint {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;  // +infinity for essential classes

    bool essential() const { return death == kInfinity; }
    double lifetime() const { return death - birth; }
    friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
};

struct PersistenceDiagram {
    int field = 11;
    int max_dim = 1;
    std::vector<PersistencePoint> points;  // sorted by (dim, birth, death)

    std::vector<PersistencePoint> in_dim(int dim) const;
    std::size_t count_infinite(int dim) const;
    /// Finite lifetimes in the given dimension, longest first.
    std::vector<double> finite_lifetimes(int dim) const;
    void sort();
};

inline constexpr int kDefaultField = 11;

bool is_prime(std::int64_t p);

/// Permutation of simplex indices sorted by (value, dimension, vertex tuple).
/// Throws std::invalid_argument if the complex fails validate_filtration.
std::vector<std::size_t> order_simplices(const FilteredComplex& complex);

struct BoundaryEntry {
    std::size_t row;
    std::int64_t coeff;  // in [0, p)
};

/// Sparse boundary matrix over Z/pZ with rows and columns in filtration order.
struct BoundaryMatrix {
    int field = kDefaultField;
    std::vector<int> dims;                               // dimension of each column's simplex
    std::vector<std::vector<BoundaryEntry>> columns;     // rows ascending
};

BoundaryMatrix build_boundary_matrix(const FilteredComplex& complex, const std::vector<std::size_t>& ordering,
                                     int field = kDefaultField);

struct Reduction {
    BoundaryMatrix reduced;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (birth column, death column)
    std::vector<std::size_t> essential;                      // unpaired positive columns
};

/// Standard column reduction with clearing (dimensions processed high to low).
Reduction reduce(BoundaryMatrix matrix, int field = kDefaultField);

/// Diagram from a reduction; zero-persistence pairs are dropped.
PersistenceDiagram extract_diagram(const Reduction& reduction, const std::vector<std::size_t>& ordering,
                                   const FilteredComplex& complex, int max_dim);

/// order_simplices + build_boundary_matrix + reduce + extract_diagram.
PersistenceDiagram compute_persistence(const FilteredComplex& complex, int max_dim, int field = kDefaultField);

/// Persistence of the clique complex of a flag filtration in dimensions
/// 0..max_dim without materialising the complex (implicit coboundary
/// reduction). Produces the same diagram as compute_persistence(expand(flag)).
PersistenceDiagram flag_persistence(const FlagFiltration& flag, int max_dim, int field = kDefaultField);

/// Betti number of the subcomplex {value <= level} in the given dimension over
/// Z/pZ by dense rank computation. Rejects subcomplexes with more than
/// `max_simplices` simplices.
std::size_t betti_at(const FilteredComplex& complex, double level, int dim, int field = kDefaultField,
                     std::size_t max_simplices = 2000);

}  // namespace dvr
