#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pdfast/errors.hpp"
#include "pdfast/field.hpp"
#include "pdfast/grid.hpp"

namespace pdfast {

namespace iodetail {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string step_tag(index_t step) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%07lld", static_cast<long long>(step));
    return buf;
}

}  // namespace iodetail

/// Nearest node to a physical point.
template <int Dim>
inline index_t nearest_node(const Grid<Dim>& grid, const Vec<Dim>& x) {
    IVec<Dim> c{};
    for (int d = 0; d < Dim; ++d) {
        int i = static_cast<int>(std::floor((x[d] - grid.origin[d]) / grid.h));
        c[d] = std::clamp(i, 0, grid.dims[d] - 1);
    }
    return grid.lin(c);
}

/// Tab-separated monitor rows: step, time, node id, displacement components.
template <int Dim>
class MonitorWriter {
  public:
    MonitorWriter() = default;

    MonitorWriter(const std::string& path, const Grid<Dim>& grid,
                  const std::vector<Vec<Dim>>& points) {
        for (const auto& x : points) nodes_.push_back(nearest_node<Dim>(grid, x));
        if (path.empty()) return;
        out_.open(path);
        if (!out_) throw IoError("cannot open monitor file: " + path);
        out_ << "# step\tt\tnode\tu_x\tu_y" << (Dim == 3 ? "\tu_z" : "") << "\n";
    }

    const std::vector<index_t>& nodes() const { return nodes_; }

    void append(index_t step, double t, const VecField<Dim>& u) {
        for (index_t p : nodes_) {
            out_ << step << "\t" << iodetail::g17(t) << "\t" << (p + 1);
            for (int d = 0; d < Dim; ++d) out_ << "\t" << iodetail::g17(u.c[d][p]);
            out_ << "\n";
        }
        out_.flush();
    }

  private:
    std::ofstream out_;
    std::vector<index_t> nodes_;
};

/// Plain tabular snapshot; round-trips bit-exactly through the reader.
template <int Dim>
inline std::string write_snapshot_dat(const std::string& dir, const Grid<Dim>& grid,
                                      const VecField<Dim>& u, const std::vector<double>& damage,
                                      index_t step, double t) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string path = dir + "/snap_" + iodetail::step_tag(step) + ".dat";
    std::ofstream out(path);
    if (!out) throw IoError("cannot open snapshot file: " + path);
    out << "# pdfast snapshot\n";
    out << "# dim " << Dim << "\n";
    out << "# dims";
    for (int d = 0; d < Dim; ++d) out << " " << grid.dims[d];
    out << "\n# h " << iodetail::g17(grid.h) << "\n";
    out << "# origin";
    for (int d = 0; d < Dim; ++d) out << " " << iodetail::g17(grid.origin[d]);
    out << "\n# step " << step << "\n";
    out << "# t " << iodetail::g17(t) << "\n";
    out << "# columns node u_x u_y " << (Dim == 3 ? "u_z damage" : "damage") << "\n";
    const index_t n = grid.n_nodes();
    for (index_t p = 0; p < n; ++p) {
        out << (p + 1);
        for (int d = 0; d < Dim; ++d) out << " " << iodetail::g17(u.c[d][p]);
        out << " " << iodetail::g17(damage.empty() ? 0.0 : damage[p]) << "\n";
    }
    if (!out) throw IoError("short write: " + path);
    return path;
}

template <int Dim>
struct Snapshot {
    IVec<Dim> dims{};
    double h = 0.0;
    Vec<Dim> origin{};
    index_t step = 0;
    double t = 0.0;
    VecField<Dim> u;
    std::vector<double> damage;
};

template <int Dim>
inline Snapshot<Dim> read_snapshot_dat(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open snapshot file: " + path);
    Snapshot<Dim> snap;
    std::string line;
    index_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string key;
            is >> key;
            if (key == "dims") {
                for (int d = 0; d < Dim; ++d) is >> snap.dims[d];
                n = 1;
                for (int d = 0; d < Dim; ++d) n *= snap.dims[d];
                snap.u.resize(n);
                snap.damage.assign(static_cast<std::size_t>(n), 0.0);
            } else if (key == "h") {
                is >> snap.h;
            } else if (key == "origin") {
                for (int d = 0; d < Dim; ++d) is >> snap.origin[d];
            } else if (key == "step") {
                is >> snap.step;
            } else if (key == "t") {
                is >> snap.t;
            }
            continue;
        }
        std::istringstream is(line);
        index_t id = 0;
        is >> id;
        if (id < 1 || id > n) throw IoError("snapshot row id out of range in " + path);
        for (int d = 0; d < Dim; ++d) is >> snap.u.c[d][id - 1];
        is >> snap.damage[static_cast<std::size_t>(id - 1)];
        if (!is) throw IoError("malformed snapshot row in " + path);
    }
    return snap;
}

/// Legacy ASCII structured-points snapshot for external viewers.
template <int Dim>
inline std::string write_snapshot_vtk(const std::string& dir, const Grid<Dim>& grid,
                                      const VecField<Dim>& u, const std::vector<double>& damage,
                                      index_t step) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string path = dir + "/snap_" + iodetail::step_tag(step) + ".vtk";
    std::ofstream out(path);
    if (!out) throw IoError("cannot open snapshot file: " + path);
    const index_t n = grid.n_nodes();
    out << "# vtk DataFile Version 3.0\n";
    out << "pdfast snapshot step " << step << "\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << grid.dims[0] << " " << grid.dims[1] << " "
        << (Dim == 3 ? grid.dims[2] : 1) << "\n";
    out << "ORIGIN " << iodetail::g17(grid.origin[0] + 0.5 * grid.h) << " "
        << iodetail::g17(grid.origin[1] + 0.5 * grid.h) << " "
        << (Dim == 3 ? iodetail::g17(grid.origin[2] + 0.5 * grid.h) : "0") << "\n";
    out << "SPACING " << iodetail::g17(grid.h) << " " << iodetail::g17(grid.h) << " "
        << iodetail::g17(grid.h) << "\n";
    out << "POINT_DATA " << n << "\n";
    out << "VECTORS displacement double\n";
    for (index_t p = 0; p < n; ++p) {
        out << iodetail::g17(u.c[0][p]) << " " << iodetail::g17(u.c[1][p]) << " "
            << (Dim == 3 ? iodetail::g17(u.c[2][p]) : "0") << "\n";
    }
    out << "SCALARS damage double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (index_t p = 0; p < n; ++p)
        out << iodetail::g17(damage.empty() ? 0.0 : damage[p]) << "\n";
    if (!out) throw IoError("short write: " + path);
    return path;
}

}  // namespace pdfast
