#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "qwirt/errors.hpp"

namespace qwirt {

using Rational = mpq_class;

/// w + xi + yj + zk over a real scalar ring. Two instantiations are used:
/// exact rationals for the symbolic engine and doubles for the numeric one.
template <typename T>
struct Quaternion {
    T w{0}, x{0}, y{0}, z{0};

    Quaternion() = default;
    Quaternion(T w_) : w(std::move(w_)) {}  // NOLINT: real scalars embed implicitly
    Quaternion(T w_, T x_, T y_, T z_)
        : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    static Quaternion i() { return {T(0), T(1), T(0), T(0)}; }
    static Quaternion j() { return {T(0), T(0), T(1), T(0)}; }
    static Quaternion k() { return {T(0), T(0), T(0), T(1)}; }

    T real() const { return w; }
    Quaternion imag() const { return {T(0), x, y, z}; }
    Quaternion conj() const { return {w, -x, -y, -z}; }
    T norm2() const { return w * w + x * x + y * y + z * z; }
    T imag_norm2() const { return x * x + y * y + z * z; }

    bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
    bool is_real() const { return x == 0 && y == 0 && z == 0; }

    Quaternion operator-() const { return {-w, -x, -y, -z}; }

    Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Quaternion& operator*=(const T& s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend Quaternion operator*(Quaternion a, const T& s) { return a *= s; }
    friend Quaternion operator*(const T& s, Quaternion a) { return a *= s; }

    // Hamilton product.
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

using QuatQ = Quaternion<Rational>;
using QuatD = Quaternion<double>;

template <typename T>
Quaternion<T> qmul(const Quaternion<T>& a, const Quaternion<T>& b) {
    return a * b;
}

/// conj(q) / |q|^2. Exact for rationals.
template <typename T>
Quaternion<T> qinv(const Quaternion<T>& q) {
    const T n2 = q.norm2();
    if (n2 == 0) throw DivisionByZero("inverse of the zero quaternion");
    Quaternion<T> c = q.conj();
    return {c.w / n2, c.x / n2, c.y / n2, c.z / n2};
}

inline double abs(const QuatD& q) { return std::sqrt(q.norm2()); }

inline QuatD to_double(const QuatQ& q) {
    return {q.w.get_d(), q.x.get_d(), q.y.get_d(), q.z.get_d()};
}

/// J = Im(q)/|Im(q)|, so that q = Re(q) + J|Im(q)|. Only meaningful in
/// floating point: |Im(q)| is irrational in general.
QuatD imaginary_unit(const QuatD& q);

/// Parses `a+bi+cj+dk` with rational (`p/q`) or decimal components, in any
/// order; bare `i`, `-k` are accepted. Throws SyntaxError.
QuatQ parse_quaternion(std::string_view text);

/// Scans an unsigned rational (`12`, `3/4`, `0.25`) starting at `pos`;
/// advances `pos` past it. Returns false (pos untouched) if none is there.
bool scan_unsigned_rational(std::string_view text, std::size_t& pos, Rational& out);

/// Canonical literal, e.g. `1/2+3i-2/5k`; `0` for zero.
std::string to_string(const QuatQ& q);
std::string to_string(const QuatD& q);

}  // namespace qwirt
