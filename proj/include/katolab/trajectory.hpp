#pragma once

#include <vector>

#include "katolab/norms.hpp"
#include "katolab/spectral_field.hpp"
#include "katolab/time_grid.hpp"

namespace katolab {

// Time-indexed family of spectral fields on a graded grid; the carrier of
// mild solutions and of the Picard iterates. The field at t_0 = 0 is stored
// for reconstruction but never enters a norm.
struct Trajectory {
    TimeGrid grid;
    std::vector<SpectralField> fields; // size M+1, node j at t_j

    Trajectory(TimeGrid tg, SpectralField initial)
        : grid(tg), fields(static_cast<std::size_t>(tg.M) + 1, initial) {}

    Trajectory(TimeGrid tg, std::vector<SpectralField> f) : grid(tg), fields(std::move(f)) {
        if (fields.size() != static_cast<std::size_t>(grid.M) + 1)
            throw GridError("Trajectory: need M+1 node fields");
    }

    int nodes() const { return grid.M + 1; }
    SpectralField& at(int j) { return fields[static_cast<std::size_t>(j)]; }
    const SpectralField& at(int j) const { return fields[static_cast<std::size_t>(j)]; }

    void check_compatible(const Trajectory& o) const {
        if (grid.M != o.grid.M || grid.tau != o.grid.tau || grid.r != o.grid.r)
            throw GridError("Trajectory: time grid mismatch");
        fields[0].check_compatible(o.fields[0]);
    }

    Trajectory& operator+=(const Trajectory& o) {
        check_compatible(o);
        for (int j = 0; j < nodes(); ++j) fields[static_cast<std::size_t>(j)] += o.fields[static_cast<std::size_t>(j)];
        return *this;
    }
    Trajectory& operator-=(const Trajectory& o) {
        check_compatible(o);
        for (int j = 0; j < nodes(); ++j) fields[static_cast<std::size_t>(j)] -= o.fields[static_cast<std::size_t>(j)];
        return *this;
    }
    Trajectory& operator*=(double c) {
        for (auto& f : fields) f *= c;
        return *this;
    }
    friend Trajectory operator-(Trajectory a, const Trajectory& b) { return a -= b; }
    friend Trajectory operator+(Trajectory a, const Trajectory& b) { return a += b; }
};

// space norm at every node t_1..t_M
inline std::vector<double> node_norms(const Trajectory& x, const SpaceTag& tag) {
    std::vector<double> out(static_cast<std::size_t>(x.grid.M));
    for (int j = 1; j <= x.grid.M; ++j) out[static_cast<std::size_t>(j - 1)] = space_norm(x.at(j), tag);
    return out;
}

inline double trajectory_norm(const Trajectory& x, const WeightedTimeNorm& norm) {
    return weighted_time_norm(node_norms(x, norm.space), norm, x.grid);
}

// binary container: uint32 {n, N, components, node count}, doubles {tau, r},
// then the node fields' coefficients in order
inline void save_trajectory(const Trajectory& x, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    const Grid& g = x.fields[0].grid();
    std::uint32_t hdr[4] = {static_cast<std::uint32_t>(g.dim()), static_cast<std::uint32_t>(g.modes()),
                            static_cast<std::uint32_t>(x.fields[0].components()),
                            static_cast<std::uint32_t>(x.fields.size())};
    f.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    double meta[2] = {x.grid.tau, x.grid.r};
    f.write(reinterpret_cast<const char*>(meta), sizeof(meta));
    for (const auto& field : x.fields)
        for (int c = 0; c < field.components(); ++c)
            f.write(reinterpret_cast<const char*>(field.component(c).data()),
                    static_cast<std::streamsize>(field.component(c).size() * sizeof(Complex)));
    if (!f) throw IoError("write failed: " + path);
}

inline Trajectory load_trajectory(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::uint32_t hdr[4];
    f.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    double meta[2];
    f.read(reinterpret_cast<char*>(meta), sizeof(meta));
    if (!f) throw IoError("truncated header: " + path);
    Grid g(static_cast<int>(hdr[0]), static_cast<int>(hdr[1]));
    TimeGrid tg(meta[0], static_cast<int>(hdr[3]) - 1, meta[1]);
    std::vector<SpectralField> fields;
    fields.reserve(hdr[3]);
    for (std::uint32_t j = 0; j < hdr[3]; ++j) {
        SpectralField field(g, static_cast<int>(hdr[2]));
        for (int c = 0; c < field.components(); ++c)
            f.read(reinterpret_cast<char*>(field.component(c).data()),
                   static_cast<std::streamsize>(field.component(c).size() * sizeof(Complex)));
        fields.push_back(std::move(field));
    }
    if (!f) throw IoError("truncated data: " + path);
    return Trajectory(tg, std::move(fields));
}

} // namespace katolab
