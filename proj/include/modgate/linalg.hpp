// Copyright 2026 The modgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODGATE_LINALG_HPP
#define MODGATE_LINALG_HPP

// Fixed-dimension complex linear algebra for one and two qubits.
//
// Joint two-qubit amplitudes use index = 2 * system_bit + ancilla_bit, so the
// system qubit is the major (control) index.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>

#include "modgate/errors.hpp"

namespace modgate {

using Complex = std::complex<double>;

inline constexpr double kUnitNormTolerance = 1e-9;

inline bool is_finite(Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

/// Principal-branch argument in (-pi, pi].
inline double principal_arg(Complex c) {
    double r = std::arg(c);
    return r <= -std::numbers::pi ? std::numbers::pi : r;
}

/// Wraps any finite angle into (-pi, pi].
inline double wrap_angle(double x) {
    double r = std::remainder(x, 2 * std::numbers::pi);
    return r <= -std::numbers::pi ? r + 2 * std::numbers::pi : r;
}

template <std::size_t N>
class Vec {
   public:
    constexpr Vec() = default;

    explicit Vec(const std::array<Complex, N> &amps) : amps_(amps) {
        for (const auto &c : amps_) {
            if (!is_finite(c)) {
                throw InvalidInput("vector amplitude is not finite");
            }
        }
    }

    Vec(std::initializer_list<Complex> amps) {
        if (amps.size() != N) {
            throw InvalidInput("wrong number of amplitudes");
        }
        std::size_t k = 0;
        for (const auto &c : amps) {
            if (!is_finite(c)) {
                throw InvalidInput("vector amplitude is not finite");
            }
            amps_[k++] = c;
        }
    }

    static constexpr std::size_t size() { return N; }
    Complex operator[](std::size_t k) const { return amps_[k]; }
    const std::array<Complex, N> &amplitudes() const { return amps_; }

    double norm_squared() const {
        double s = 0;
        for (const auto &c : amps_) {
            s += std::norm(c);
        }
        return s;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    friend Vec operator*(Complex s, const Vec &v) {
        Vec r = v;
        for (auto &c : r.amps_) {
            c *= s;
        }
        return r;
    }
    friend Vec operator+(const Vec &u, const Vec &v) {
        Vec r = u;
        for (std::size_t k = 0; k < N; k++) {
            r.amps_[k] += v.amps_[k];
        }
        return r;
    }
    friend Vec operator-(const Vec &u, const Vec &v) { return u + Complex{-1.0} * v; }

   private:
    std::array<Complex, N> amps_{};
};

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

/// A vector known to have unit norm (within kUnitNormTolerance).
template <std::size_t N>
class UnitVec {
   public:
    /// Throws InvalidInput unless `v` already has unit norm.
    explicit UnitVec(const Vec<N> &v) : v_(v) {
        if (std::abs(v.norm_squared() - 1.0) > kUnitNormTolerance) {
            throw InvalidInput("state is not unit-norm");
        }
    }
    UnitVec(std::initializer_list<Complex> amps) : UnitVec(Vec<N>(amps)) {}

    /// Rescales `v` to unit norm. Throws InvalidInput for the zero vector.
    static UnitVec normalized(const Vec<N> &v) {
        double n = v.norm();
        if (!(n > 0) || !std::isfinite(n)) {
            throw InvalidInput("cannot normalize a zero vector");
        }
        return UnitVec(Complex{1.0 / n} * v);
    }

    static UnitVec basis(std::size_t k) {
        std::array<Complex, N> a{};
        a[k] = 1.0;
        return UnitVec(Vec<N>(a));
    }

    const Vec<N> &vec() const { return v_; }
    operator const Vec<N> &() const { return v_; }
    Complex operator[](std::size_t k) const { return v_[k]; }

   private:
    Vec<N> v_;
};

using UnitVec2 = UnitVec<2>;
using UnitVec4 = UnitVec<4>;

/// Square complex matrix, row-major.
template <std::size_t N>
class Operator {
   public:
    constexpr Operator() = default;

    explicit Operator(const std::array<Complex, N * N> &entries) : m_(entries) {
        for (const auto &c : m_) {
            if (!is_finite(c)) {
                throw InvalidInput("operator entry is not finite");
            }
        }
    }

    static Operator identity() {
        Operator r;
        for (std::size_t k = 0; k < N; k++) {
            r.m_[k * N + k] = 1.0;
        }
        return r;
    }

    static Operator diagonal(const std::array<Complex, N> &d) {
        Operator r;
        for (std::size_t k = 0; k < N; k++) {
            r.m_[k * N + k] = d[k];
        }
        return r;
    }

    static constexpr std::size_t dim() { return N; }

    Complex operator()(std::size_t row, std::size_t col) const { return m_[row * N + col]; }
    Complex &operator()(std::size_t row, std::size_t col) { return m_[row * N + col]; }
    const std::array<Complex, N * N> &entries() const { return m_; }

    Complex trace() const {
        Complex t = 0;
        for (std::size_t k = 0; k < N; k++) {
            t += m_[k * N + k];
        }
        return t;
    }

    Operator adjoint() const {
        Operator r;
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = 0; j < N; j++) {
                r.m_[j * N + i] = std::conj(m_[i * N + j]);
            }
        }
        return r;
    }

    /// Largest entry magnitude.
    double max_abs() const {
        double r = 0;
        for (const auto &c : m_) {
            r = std::max(r, std::abs(c));
        }
        return r;
    }

    bool is_unitary(double tol) const {
        return ((*this) * adjoint() - identity()).max_abs() <= tol;
    }

    friend Operator operator*(const Operator &a, const Operator &b) {
        Operator r;
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t k = 0; k < N; k++) {
                Complex aik = a.m_[i * N + k];
                for (std::size_t j = 0; j < N; j++) {
                    r.m_[i * N + j] += aik * b.m_[k * N + j];
                }
            }
        }
        return r;
    }
    friend Vec<N> operator*(const Operator &a, const Vec<N> &v) {
        std::array<Complex, N> r{};
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = 0; j < N; j++) {
                r[i] += a.m_[i * N + j] * v[j];
            }
        }
        return Vec<N>(r);
    }
    friend Operator operator*(Complex s, const Operator &a) {
        Operator r = a;
        for (auto &c : r.m_) {
            c *= s;
        }
        return r;
    }
    friend Operator operator+(const Operator &a, const Operator &b) {
        Operator r = a;
        for (std::size_t k = 0; k < N * N; k++) {
            r.m_[k] += b.m_[k];
        }
        return r;
    }
    friend Operator operator-(const Operator &a, const Operator &b) {
        return a + Complex{-1.0} * b;
    }

   private:
    std::array<Complex, N * N> m_{};
};

using Operator2 = Operator<2>;
using Operator4 = Operator<4>;

inline Operator2 make_op2(Complex m00, Complex m01, Complex m10, Complex m11) {
    return Operator2({m00, m01, m10, m11});
}

namespace pauli {
inline Operator2 x() { return make_op2(0, 1, 1, 0); }
inline Operator2 y() { return make_op2(0, Complex{0, -1}, Complex{0, 1}, 0); }
inline Operator2 z() { return make_op2(1, 0, 0, -1); }
}  // namespace pauli

/// Product state with the system as the major index: out[2s + a] = sys[s] * anc[a].
inline Vec4 tensor(const Vec2 &sys, const Vec2 &anc) {
    return Vec4({sys[0] * anc[0], sys[0] * anc[1], sys[1] * anc[0], sys[1] * anc[1]});
}

inline Operator4 tensor(const Operator2 &sys, const Operator2 &anc) {
    Operator4 r;
    for (std::size_t s1 = 0; s1 < 2; s1++)
        for (std::size_t a1 = 0; a1 < 2; a1++)
            for (std::size_t s2 = 0; s2 < 2; s2++)
                for (std::size_t a2 = 0; a2 < 2; a2++)
                    r(2 * s1 + a1, 2 * s2 + a2) = sys(s1, s2) * anc(a1, a2);
    return r;
}

/// <bra|ket>, conjugating the first argument.
template <std::size_t N>
Complex inner(const Vec<N> &bra, const Vec<N> &ket) {
    Complex s = 0;
    for (std::size_t k = 0; k < N; k++) {
        s += std::conj(bra[k]) * ket[k];
    }
    return s;
}

/// |<u|v>| for unit vectors; 1 means equal up to a global phase.
template <std::size_t N>
double fidelity(const UnitVec<N> &u, const UnitVec<N> &v) {
    return std::abs(inner(u.vec(), v.vec()));
}

/// Outer product |u><v|.
inline Operator2 outer(const Vec2 &u, const Vec2 &v) {
    return make_op2(u[0] * std::conj(v[0]), u[0] * std::conj(v[1]), u[1] * std::conj(v[0]),
                    u[1] * std::conj(v[1]));
}

namespace detail {

// sinh(s)/s, continuous at s = 0.
inline Complex sinhc(Complex s) {
    if (std::abs(s) < 1e-4) {
        Complex s2 = s * s;
        return 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
    }
    return std::sinh(s) / s;
}

}  // namespace detail

/// Exact exponential of an arbitrary complex 2x2 matrix.
///
/// Writes G = t*I + M with t = tr(G)/2 and M traceless. Since M^2 = -det(M)*I,
/// exp(M) = cosh(s)*I + sinh(s)/s * M with s^2 = -det(M); both coefficient
/// functions are even in s, so the square-root branch does not matter.
inline Operator2 mat_exp_2x2(const Operator2 &g) {
    Complex t = g.trace() / 2.0;
    Operator2 m = g - t * Operator2::identity();
    Complex det_m = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Complex s = std::sqrt(-det_m);
    Complex scale = std::exp(t);
    return scale * (std::cosh(s) * Operator2::identity() + detail::sinhc(s) * m);
}

}  // namespace modgate

#endif
