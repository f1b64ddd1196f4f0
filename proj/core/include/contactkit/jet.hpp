#pragma once

#include <cmath>
#include <type_traits>

namespace contactkit {

// Forward-mode dual number: value + one directional derivative slot.
// Nesting Jet<Jet<double>> yields exact mixed second derivatives, which is
// all the flow fields in this project ever need.
template <class T>
struct Jet {
    T v{};  // value
    T d{};  // derivative along the seeded direction

    constexpr Jet() = default;
    constexpr Jet(double s) : v(s), d() {}
    constexpr Jet(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}

    Jet& operator+=(const Jet& r) { v += r.v; d += r.d; return *this; }
    Jet& operator-=(const Jet& r) { v -= r.v; d -= r.d; return *this; }
    Jet& operator*=(const Jet& r) { d = d * r.v + v * r.d; v = v * r.v; return *this; }
    Jet& operator/=(const Jet& r) { v = v / r.v; d = (d - v * r.d) / r.v; return *this; }
};

using Dual  = Jet<double>;
using Dual2 = Jet<Jet<double>>;

inline double primal_value(double x) { return x; }
template <class T>
double primal_value(const Jet<T>& x) { return primal_value(x.v); }

template <class T> Jet<T> operator+(Jet<T> a, const Jet<T>& b) { return a += b; }
template <class T> Jet<T> operator-(Jet<T> a, const Jet<T>& b) { return a -= b; }
template <class T> Jet<T> operator*(Jet<T> a, const Jet<T>& b) { return a *= b; }
template <class T> Jet<T> operator/(Jet<T> a, const Jet<T>& b) { return a /= b; }

template <class T> Jet<T> operator+(Jet<T> a, double b) { a.v += T(b); return a; }
template <class T> Jet<T> operator+(double a, Jet<T> b) { b.v += T(a); return b; }
template <class T> Jet<T> operator-(Jet<T> a, double b) { a.v -= T(b); return a; }
template <class T> Jet<T> operator-(double a, const Jet<T>& b) { return Jet<T>(T(a) - b.v, T() - b.d); }
template <class T> Jet<T> operator*(Jet<T> a, double b) { a.v = a.v * T(b); a.d = a.d * T(b); return a; }
template <class T> Jet<T> operator*(double a, Jet<T> b) { return b * a; }
template <class T> Jet<T> operator/(Jet<T> a, double b) { a.v = a.v / T(b); a.d = a.d / T(b); return a; }
template <class T> Jet<T> operator/(double a, const Jet<T>& b) { return Jet<T>(a) / b; }

template <class T> Jet<T> operator-(const Jet<T>& a) { return Jet<T>(T() - a.v, T() - a.d); }
template <class T> const Jet<T>& operator+(const Jet<T>& a) { return a; }

// Ordering compares primal values only; used for branch selection in
// piecewise-smooth profiles.
template <class T> bool operator<(const Jet<T>& a, double b) { return primal_value(a) < b; }
template <class T> bool operator>(const Jet<T>& a, double b) { return primal_value(a) > b; }
template <class T> bool operator<=(const Jet<T>& a, double b) { return primal_value(a) <= b; }
template <class T> bool operator>=(const Jet<T>& a, double b) { return primal_value(a) >= b; }

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

template <class T>
Jet<T> sin(const Jet<T>& x) { return Jet<T>(sin(x.v), cos(x.v) * x.d); }

template <class T>
Jet<T> cos(const Jet<T>& x) { return Jet<T>(cos(x.v), T() - sin(x.v) * x.d); }

template <class T>
Jet<T> exp(const Jet<T>& x) { T e = exp(x.v); return Jet<T>(e, e * x.d); }

template <class T>
Jet<T> sqrt(const Jet<T>& x) { T r = sqrt(x.v); return Jet<T>(r, x.d / (2.0 * r)); }

template <class T>
Jet<T> sqr(const Jet<T>& x) { return x * x; }
inline double sqr(double x) { return x * x; }

template <class T>
bool jet_finite(const Jet<T>& x) {
    if constexpr (std::is_same_v<T, double>)
        return std::isfinite(x.v) && std::isfinite(x.d);
    else
        return jet_finite(x.v) && jet_finite(x.d);
}

}  // namespace contactkit
