#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "katolab/errors.hpp"

namespace katolab {

inline constexpr double infty = std::numeric_limits<double>::infinity();

// Designator of a function space norm. Parameters that do not apply to a
// given kind are ignored.
struct SpaceTag {
    enum class Kind { Lq, WeakLq, Besov, HomBesov, WeakBesov, HomWeakBesov, Hoelder, Morrey, HomSobolev, HomWeakSobolev };

    Kind kind = Kind::Lq;
    double s = 0.0;      // smoothness
    double q = 2.0;      // integrability
    double p = 2.0;      // block summation index
    double lambda = 0.0; // Morrey exponent
    double eps = 0.0;    // Hoelder exponent

    static SpaceTag lq(double q) { return {Kind::Lq, 0, q, 0, 0, 0}; }
    static SpaceTag weak_lq(double q) { return {Kind::WeakLq, 0, q, 0, 0, 0}; }
    static SpaceTag besov(double s, double q, double p) { return {Kind::Besov, s, q, p, 0, 0}; }
    static SpaceTag hom_besov(double s, double q, double p) { return {Kind::HomBesov, s, q, p, 0, 0}; }
    static SpaceTag weak_besov(double s, double q, double p) { return {Kind::WeakBesov, s, q, p, 0, 0}; }
    static SpaceTag hom_weak_besov(double s, double q, double p) { return {Kind::HomWeakBesov, s, q, p, 0, 0}; }
    static SpaceTag hoelder(double eps) { return {Kind::Hoelder, eps, infty, infty, 0, eps}; }
    static SpaceTag morrey(double q, double lambda) { return {Kind::Morrey, 0, q, 0, lambda, 0}; }
    static SpaceTag hom_sobolev(double s, double q) { return {Kind::HomSobolev, s, q, 0, 0, 0}; }
    static SpaceTag hom_weak_sobolev(double s, double q) { return {Kind::HomWeakSobolev, s, q, 0, 0, 0}; }

    std::string name() const {
        switch (kind) {
            case Kind::Lq: return "L^" + num(q);
            case Kind::WeakLq: return "L^{" + num(q) + ",inf}";
            case Kind::Besov: return "B^" + num(s) + "_{" + num(q) + "," + num(p) + "}";
            case Kind::HomBesov: return "hB^" + num(s) + "_{" + num(q) + "," + num(p) + "}";
            case Kind::WeakBesov: return "B^" + num(s) + "_{(" + num(q) + ",inf)," + num(p) + "}";
            case Kind::HomWeakBesov: return "hB^" + num(s) + "_{(" + num(q) + ",inf)," + num(p) + "}";
            case Kind::Hoelder: return "C^" + num(eps);
            case Kind::Morrey: return "M^{" + num(q) + "," + num(lambda) + "}";
            case Kind::HomSobolev: return "hH^" + num(s) + "_" + num(q);
            case Kind::HomWeakSobolev: return "hH^" + num(s) + "_{" + num(q) + ",inf}";
        }
        return "?";
    }

  private:
    static std::string num(double v) {
        if (v == infty) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", v);
        return buf;
    }
};

} // namespace katolab
