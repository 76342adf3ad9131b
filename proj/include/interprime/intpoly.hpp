#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "interprime/numtheory.hpp"

namespace interprime {

/// Exact polynomial with arbitrary-precision integer coefficients.
/// coeffs()[i] is the coefficient of x^i; trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient vector and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const Integer& c);
    static IntPoly monomial(const Integer& c, std::size_t power);
    /// a*x + b
    static IntPoly linear(const Integer& a, const Integer& b);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of x^i, zero past the degree.
    Integer coeff(std::size_t i) const;
    const Integer& leading() const;

    Integer operator()(const Integer& x) const;

    IntPoly& operator+=(const IntPoly& other);
    IntPoly& operator-=(const IntPoly& other);
    IntPoly& operator*=(const IntPoly& other);
    IntPoly& operator*=(const Integer& scalar);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
    friend IntPoly operator*(IntPoly a, const Integer& s) { return a *= s; }
    friend IntPoly operator*(const Integer& s, IntPoly a) { return a *= s; }
    IntPoly operator-() const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    /// Human-readable form, e.g. "2x^3 + 3x^2 + x".
    std::string to_string() const;
    /// Canonical list form "[a0,a1,...,ak]".
    std::string to_list() const;

private:
    void trim();

    std::vector<Integer> coeffs_;
};

/// Parses either the expression grammar
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*'? factor)*      (an integer may only lead a term)
///   factor := INT | 'x' ('^' UINT)? | '(' poly ')' ('^' UINT)?
/// or the list form "[a0,a1,...,ak]". Whitespace between tokens is ignored.
IntPoly parse_poly(std::string_view text);

Integer evaluate(const IntPoly& f, const Integer& x);
IntPoly derivative(const IntPoly& f);

/// gcd of the coefficients of x^1..x^k; the constant term does not take part.
Integer content(const IntPoly& f);

/// gcd of all coefficients (zero for the zero polynomial).
Integer full_content(const IntPoly& f);

/// f divided by its full content, sign chosen so the leading coefficient is positive.
IntPoly primitive_part(const IntPoly& f);

struct GrowthBounds {
    Integer leading;  // b(f)
    Rational bound;   // B(f) = 2/|b_k| * (|b_{k-1}| + ... + |b_0|)
};

/// When leading > 0, (1/2) b x^k <= f(x) <= (3/2) b x^k holds for x >= bound.
GrowthBounds growth_bounds(const IntPoly& f);

/// f(a*x + b)
IntPoly affine_compose(const IntPoly& f, const Integer& a, const Integer& b);

/// Exact quotient over Z; throws InexactDivision when the divisor does not divide.
IntPoly divexact(const IntPoly& f, const IntPoly& g);
IntPoly divexact(const IntPoly& f, const Integer& c);

/// lc(g)^(deg f - deg g + 1) * f mod g
IntPoly pseudo_remainder(const IntPoly& f, const IntPoly& g);

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& f, const IntPoly& g);

/// Sylvester resultant, equal to lc(f)^deg g * lc(g)^deg f * prod (alpha_i - beta_j).
Integer resultant(const IntPoly& f, const IntPoly& g);

/// Classical discriminant lc^(2n-2) * prod_{i<j} (alpha_i - alpha_j)^2.
Integer discriminant(const IntPoly& f);

struct SquarefreeFactor {
    IntPoly poly;        // primitive, squarefree, positive leading coefficient
    unsigned exponent;   // multiplicity of every root of poly in f
};

struct SquarefreeDecomposition {
    Integer unit;
    std::vector<SquarefreeFactor> factors;  // ascending exponent

    IntPoly expand() const;
};

SquarefreeDecomposition squarefree_decomposition(const IntPoly& f);

/// Product of the distinct squarefree factors (primitive, positive leading coefficient).
IntPoly squarefree_part(const SquarefreeDecomposition& dec);

/// a^(2k-2) * prod_{i != j} (eta_i - eta_j)^(e_i e_j) over the distinct roots eta_i of f
/// with multiplicities e_i. The product runs over ordered pairs, so for separable f
/// the result is (-1)^(k(k-1)/2) times the classical discriminant.
Integer semidiscriminant(const IntPoly& f);

}  // namespace interprime
