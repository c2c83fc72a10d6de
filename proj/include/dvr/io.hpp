#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dvr/persistence.hpp"
#include "dvr/point_cloud.hpp"

namespace dvr {

/// Malformed file contents. Distinct from std::invalid_argument so callers
/// can tell bad input files from bad parameters.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Point clouds: header `x0,...,x{m-1}[,density]`, one point per row, LF endings.
void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_point_cloud_csv(std::istream& in);
void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud load_point_cloud(const std::filesystem::path& path);

// Diagrams: {"field": p, "max_dim": d, "points": [{"dim": k, "birth": b, "death": v | "inf"}]}.
// Extra top-level members (run metadata) are written verbatim when given and ignored on read.
std::string diagram_to_json(const PersistenceDiagram& dgm, const std::string& metadata_json = {});
PersistenceDiagram diagram_from_json(const std::string& text);
void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& dgm, const std::string& metadata_json = {});
PersistenceDiagram load_diagram(const std::filesystem::path& path);

/// Persistence diagram plot: birth on x, death on y, diagonal, essential
/// points on a band above the plot, one marker per distinct point labelled
/// with its multiplicity when greater than one.
std::string diagram_to_svg(const PersistenceDiagram& dgm);

/// Shortest decimal that reads back to the same double (17 significant digits).
std::string format_double(double value);

}  // namespace dvr
