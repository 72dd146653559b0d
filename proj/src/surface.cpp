#include "darboux/surface.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace darboux {

namespace {

const std::set<std::string> kSurfaceVars{"u", "v"};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

Surface::Surface(std::string name, Expr x, Expr y, Expr z, Interval u, Interval v)
    : name_(std::move(name)), coords_{std::move(x), std::move(y), std::move(z)}, u_(u), v_(v) {
    for (int i = 0; i < 3; ++i) {
        for (const auto& var : free_variables(coords_[i]))
            if (!kSurfaceVars.count(var))
                throw std::invalid_argument("surface '" + name_ + "': unexpected variable '" + var + "'");
        du_[i] = differentiate(coords_[i], "u");
        dv_[i] = differentiate(coords_[i], "v");
    }
}

Surface Surface::from_strings(std::string name, std::string_view x, std::string_view y, std::string_view z,
                              Interval u, Interval v) {
    return Surface(std::move(name), parse(x, kSurfaceVars), parse(y, kSurfaceVars), parse(z, kSurfaceVars), u, v);
}

Surface Surface::with_flipped_normal(bool flip) const {
    Surface s = *this;
    s.flipped_ = flip;
    return s;
}

void Surface::check_domain(double u, double v) const {
    if (!contains(u, v))
        throw OutOfDomain("(" + fmt(u) + ", " + fmt(v) + ") outside the domain of '" + name_ + "'");
}

Vec3 Surface::position(double u, double v) const {
    check_domain(u, v);
    return position_of(u, v);
}

Vec3 Surface::partial_u(double u, double v) const {
    check_domain(u, v);
    return {eval(du_[0], u, v), eval(du_[1], u, v), eval(du_[2], u, v)};
}

Vec3 Surface::partial_v(double u, double v) const {
    check_domain(u, v);
    return {eval(dv_[0], u, v), eval(dv_[1], u, v), eval(dv_[2], u, v)};
}

Vec3 Surface::unit_normal(double u, double v) const {
    check_domain(u, v);
    const Vec3 n = raw_normal_of(u, v);
    const double len = norm(n);
    if (!(len > kNormalThreshold))
        throw DegenerateParameterization("|r_u x r_v| = " + fmt(len) + " at (" + fmt(u) + ", " + fmt(v) + ")");
    return n / len;
}

Surface make_plane() {
    return Surface::from_strings("plane", "u", "v", "0", Interval{}, Interval{});
}

Surface make_sphere() {
    constexpr double pi = std::numbers::pi;
    return Surface::from_strings("sphere", "sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)",
                                 Interval{0.0, pi, true, true}, Interval{0.0, 2.0 * pi});
}

Surface make_cylinder(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
    const Expr r = Expr::constant(radius);
    const Expr u = Expr::variable("u");
    return Surface("cylinder", r * cos(u), r * sin(u), Expr::variable("v"), Interval{}, Interval{});
}

Surface make_torus(double major, double minor) {
    if (!(minor > 0.0) || !(major > minor)) throw std::invalid_argument("torus needs R > r > 0");
    const Expr big = Expr::constant(major);
    const Expr small = Expr::constant(minor);
    const Expr u = Expr::variable("u");
    const Expr v = Expr::variable("v");
    const Expr ring = big + small * cos(u);
    return Surface("torus", ring * cos(v), ring * sin(v), small * sin(u), Interval{}, Interval{});
}

std::vector<std::string> builtin_surface_names() { return {"plane", "sphere", "cylinder", "torus"}; }

Surface builtin_surface(const std::string& name, const std::map<std::string, double>& params) {
    auto param = [&](const char* key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "plane") return make_plane();
    if (name == "sphere") return make_sphere();
    if (name == "cylinder") return make_cylinder(param("radius", 1.0));
    if (name == "torus") return make_torus(param("R", 2.0), param("r", 1.0));
    throw std::invalid_argument("unknown builtin surface '" + name + "'");
}

}  // namespace darboux
