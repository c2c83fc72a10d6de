#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "dvr/datasets.hpp"
#include "dvr/density.hpp"
#include "dvr/diagram_metrics.hpp"
#include "dvr/errors.hpp"
#include "dvr/filtration.hpp"
#include "dvr/persistence.hpp"
#include "dvr/scaled_metric.hpp"

namespace py = pybind11;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

namespace {

dvr::PointCloud to_cloud(const Array& points, const std::optional<Array>& density) {
    if (points.ndim() != 2) throw std::invalid_argument("points must be a 2-d array");
    const auto n = static_cast<std::size_t>(points.shape(0));
    const auto m = static_cast<std::size_t>(points.shape(1));
    dvr::PointCloud cloud(m, std::vector<double>(points.data(), points.data() + n * m));
    if (density) {
        if (density->ndim() != 1 || static_cast<std::size_t>(density->shape(0)) != n)
            throw std::invalid_argument("density must have one value per point");
        cloud.set_oracle_density(std::vector<double>(density->data(), density->data() + n));
    }
    return cloud;
}

Array to_array(const dvr::PointCloud& cloud) {
    Array out({cloud.size(), cloud.ambient_dim()});
    std::copy(cloud.coords().begin(), cloud.coords().end(), out.mutable_data());
    return out;
}

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

// Rows of (dim, birth, death); death is inf for essential classes.
Array to_array(const dvr::PersistenceDiagram& dgm) {
    Array out({dgm.points.size(), std::size_t{3}});
    auto r = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < dgm.points.size(); ++i) {
        r(i, 0) = dgm.points[i].dim;
        r(i, 1) = dgm.points[i].birth;
        r(i, 2) = dgm.points[i].death;
    }
    return out;
}

dvr::PersistenceDiagram to_diagram(const Array& rows) {
    if (rows.ndim() != 2 || rows.shape(1) != 3) throw std::invalid_argument("diagram must be an (M, 3) array");
    dvr::PersistenceDiagram dgm;
    auto r = rows.unchecked<2>();
    for (py::ssize_t i = 0; i < rows.shape(0); ++i)
        dgm.points.push_back({static_cast<int>(r(i, 0)), r(i, 1), r(i, 2)});
    dgm.sort();
    return dgm;
}

dvr::PersistenceDiagram compute(const dvr::PointCloud& cloud, const std::string& filtration, const dvr::DvrOptions& opt,
                                int field, int max_dim, std::optional<double> cap) {
    switch (dvr::parse_filtration_family(filtration)) {
        case dvr::FiltrationFamily::vr:
            return dvr::flag_persistence(dvr::vr_flag(dvr::DistanceMatrix::euclidean(cloud), cap), max_dim, field);
        case dvr::FiltrationFamily::dvr:
            return dvr::flag_persistence(dvr::dvr_flag(cloud, opt, cap), max_dim, field);
        case dvr::FiltrationFamily::wvr:
            return dvr::flag_persistence(
                dvr::weighted_vr_flag(cloud, dvr::dvr_densities(cloud, opt), opt.intrinsic_dim, cap), max_dim, field);
        case dvr::FiltrationFamily::knn: {
            std::optional<int> k_cap;
            if (cap) k_cap = static_cast<int>(*cap);
            return dvr::flag_persistence(dvr::knn_flag(cloud, k_cap), max_dim, field);
        }
        case dvr::FiltrationFamily::cech:
            return dvr::compute_persistence(dvr::cech_filtration_euclidean(cloud, max_dim, cap), max_dim, field);
    }
    throw std::logic_error("unreachable");
}

Array persistence(const Array& points, const std::string& filtration, int n, int k, const std::string& kernel,
                  int field, int max_dim, std::optional<double> cap, std::optional<Array> density) {
    const auto cloud = to_cloud(points, density);
    dvr::DvrOptions opt;
    opt.intrinsic_dim = n;
    opt.k = k;
    opt.kernel = dvr::parse_kernel_family(kernel);
    dvr::PersistenceDiagram dgm;
    {
        py::gil_scoped_release release;
        dgm = compute(cloud, filtration, opt, field, max_dim, cap);
    }
    return to_array(dgm);
}

}  // namespace

PYBIND11_MODULE(_dvrph, m) {
    m.doc() = "Density-scaled Vietoris-Rips persistent homology";

    py::register_exception<dvr::DegenerateInput>(m, "DegenerateInput", PyExc_ValueError);
    py::register_exception<dvr::NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def("dataset_names", [] {
        std::vector<std::string> out;
        for (auto name : dvr::dataset_names()) out.emplace_back(name);
        return out;
    });
    m.def(
        "sample",
        [](const std::string& name, std::uint64_t seed, std::size_t n) {
            const auto cloud = dvr::sample_named(name, seed, n);
            py::object density = py::none();
            if (cloud.oracle_density()) density = to_array(*cloud.oracle_density());
            return py::make_tuple(to_array(cloud), density);
        },
        "Seeded dataset as (points, oracle density or None).", py::arg("name"), py::arg("seed"), py::arg("n") = 0);

    m.def("alpha", &dvr::alpha, py::arg("num_points"), py::arg("dim"));
    m.def(
        "kde",
        [](const Array& points, int n, const std::string& kernel) {
            const auto cloud = to_cloud(points, std::nullopt);
            dvr::DvrOptions opt;
            opt.intrinsic_dim = n;
            opt.kernel = dvr::parse_kernel_family(kernel);
            return to_array(dvr::dvr_densities(cloud, opt));
        },
        "Kernel density estimate at every point with Scott's bandwidth.", py::arg("points"), py::arg("n"),
        py::arg("kernel") = "biweight");
    m.def(
        "select_k",
        [](const Array& points, int ell, std::optional<int> k_max) {
            const auto cloud = to_cloud(points, std::nullopt);
            const int limit = k_max.value_or(static_cast<int>(std::min<std::size_t>(cloud.size() - 1, 50)));
            return dvr::select_k(cloud, ell, limit);
        },
        py::arg("points"), py::arg("ell") = 5, py::arg("k_max") = py::none());

    m.def("persistence", &persistence,
          "Persistence diagram as rows of (dim, birth, death). `density` supplies oracle values for dvr and wvr.",
          py::arg("points"), py::arg("filtration") = "vr", py::arg("n") = 1, py::arg("k") = 10,
          py::arg("kernel") = "biweight", py::arg("field") = dvr::kDefaultField, py::arg("max_dim") = 1,
          py::arg("cap") = py::none(), py::arg("density") = py::none());
    m.def(
        "bottleneck",
        [](const Array& a, const Array& b, int dim) { return dvr::bottleneck(to_diagram(a), to_diagram(b), dim); },
        py::arg("a"), py::arg("b"), py::arg("dim"));
}
