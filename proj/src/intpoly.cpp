#include "interprime/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "interprime/errors.hpp"

namespace interprime {

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t power)
{
    std::vector<Integer> v(power + 1);
    v[power] = c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::linear(const Integer& a, const Integer& b) { return IntPoly(std::vector<Integer>{b, a}); }

void IntPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

const Integer& IntPoly::leading() const
{
    if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Integer IntPoly::operator()(const Integer& x) const
{
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& other)
{
    if (is_zero() || other.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Integer> out(coeffs_.size() + other.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), other.coeffs_[j].get_mpz_t());
        }
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

IntPoly& IntPoly::operator*=(const Integer& scalar)
{
    for (auto& c : coeffs_) c *= scalar;
    trim();
    return *this;
}

IntPoly IntPoly::operator-() const
{
    IntPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

std::string IntPoly::to_string() const
{
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Integer& c = coeffs_[i];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i >= 1) os << 'x';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

std::string IntPoly::to_list() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ',';
        s += coeffs_[i].get_str();
    }
    if (coeffs_.empty()) s += '0';
    return s + "]";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    IntPoly parse()
    {
        skip_ws();
        IntPoly result;
        if (peek() == '[') {
            result = parse_list();
        } else {
            result = parse_sum();
        }
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return result;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    Integer parse_uint()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::size_t parse_exponent()
    {
        skip_ws();
        if (peek() != '^') return 1;
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        Integer e = parse_uint();
        if (e > 4096) throw ParseError("exponent too large", at);
        return e.get_ui();
    }

    IntPoly parse_list()
    {
        ++pos_;  // '['
        std::vector<Integer> coeffs;
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            return IntPoly{};
        }
        for (;;) {
            skip_ws();
            bool negative = false;
            if (peek() == '-' || peek() == '+') {
                negative = peek() == '-';
                ++pos_;
                skip_ws();
            }
            Integer v = parse_uint();
            coeffs.push_back(negative ? Integer(-v) : v);
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            if (peek() == ']') {
                ++pos_;
                break;
            }
            if (peek() == '.') fail("non-integer coefficient");
            fail("expected ',' or ']'");
        }
        return IntPoly(std::move(coeffs));
    }

    IntPoly parse_sum()
    {
        IntPoly acc;
        skip_ws();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            ++pos_;
        }
        IntPoly t = parse_term();
        acc = negative ? -t : t;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            IntPoly next = parse_term();
            if (c == '+') acc += next; else acc -= next;
        }
        return acc;
    }

    bool at_factor_start()
    {
        skip_ws();
        char c = peek();
        return c == 'x' || c == '(' || c == '*';
    }

    IntPoly parse_term()
    {
        skip_ws();
        IntPoly acc = IntPoly::constant(1);
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            acc = IntPoly::constant(parse_uint());
            have_factor = true;
            if (peek() == '.') fail("non-integer coefficient");
        }
        while (at_factor_start()) {
            if (peek() == '*') {
                if (!have_factor) fail("'*' without a left operand");
                ++pos_;
                skip_ws();
            }
            acc *= parse_factor();
            have_factor = true;
        }
        if (!have_factor) fail(peek() == '\0' ? "unexpected end of input" : "expected a term");
        return acc;
    }

    IntPoly parse_factor()
    {
        skip_ws();
        char c = peek();
        if (c == 'x') {
            ++pos_;
            return IntPoly::monomial(1, parse_exponent());
        }
        if (c == '(') {
            ++pos_;
            IntPoly inner = parse_sum();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            std::size_t e = parse_exponent();
            IntPoly r = IntPoly::constant(1);
            for (std::size_t i = 0; i < e; ++i) r *= inner;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) fail("integer must lead its term");
        fail("expected 'x' or '('");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Scalar invariants

Integer evaluate(const IntPoly& f, const Integer& x) { return f(x); }

IntPoly derivative(const IntPoly& f)
{
    const auto& c = f.coeffs();
    if (c.size() <= 1) return {};
    std::vector<Integer> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(d));
}

Integer content(const IntPoly& f)
{
    if (f.degree() < 1) throw DomainError("content is defined for degree >= 1 only");
    Integer g = 0;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.coeffs()[i].get_mpz_t());
    }
    return g;
}

Integer full_content(const IntPoly& f)
{
    Integer g = 0;
    for (const auto& c : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& f)
{
    if (f.is_zero()) return {};
    Integer g = full_content(f);
    if (f.leading() < 0) g = -g;
    return divexact(f, g);
}

GrowthBounds growth_bounds(const IntPoly& f)
{
    if (f.degree() < 1) throw DomainError("growth bounds need a nonconstant polynomial");
    Integer tail = 0;
    for (int i = 0; i < f.degree(); ++i) tail += abs(f.coeffs()[i]);
    Rational bound(2 * tail, abs(f.leading()));
    bound.canonicalize();
    return {f.leading(), bound};
}

IntPoly affine_compose(const IntPoly& f, const Integer& a, const Integer& b)
{
    if (a == 0) throw DomainError("affine_compose needs a nonzero scale");
    IntPoly inner = IntPoly::linear(a, b);
    IntPoly acc;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        acc *= inner;
        acc += IntPoly::constant(*it);
    }
    return acc;
}

IntPoly divexact(const IntPoly& f, const Integer& c)
{
    if (c == 0) throw DomainError("division by zero");
    std::vector<Integer> out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!mpz_divisible_p(f.coeffs()[i].get_mpz_t(), c.get_mpz_t())) {
            throw InexactDivision("coefficient " + f.coeffs()[i].get_str() + " not divisible by " + c.get_str());
        }
        mpz_divexact(out[i].get_mpz_t(), f.coeffs()[i].get_mpz_t(), c.get_mpz_t());
    }
    return IntPoly(std::move(out));
}

IntPoly divexact(const IntPoly& f, const IntPoly& g)
{
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    if (f.is_zero()) return {};
    if (f.degree() < g.degree()) throw InexactDivision("divisor degree exceeds dividend degree");
    std::vector<Integer> rem = f.coeffs();
    const auto& gc = g.coeffs();
    const Integer& lc = gc.back();
    std::size_t dg = gc.size() - 1;
    std::vector<Integer> quot(rem.size() - dg);
    for (std::size_t i = quot.size(); i-- > 0;) {
        Integer& top = rem[i + dg];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) {
            throw InexactDivision("polynomial division is not exact over Z");
        }
        Integer q;
        mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
        for (std::size_t j = 0; j <= dg; ++j) {
            mpz_submul(rem[i + j].get_mpz_t(), q.get_mpz_t(), gc[j].get_mpz_t());
        }
        quot[i] = q;
    }
    for (const auto& r : rem) {
        if (r != 0) throw InexactDivision("polynomial division leaves a remainder");
    }
    return IntPoly(std::move(quot));
}

IntPoly pseudo_remainder(const IntPoly& f, const IntPoly& g)
{
    if (g.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
    if (f.degree() < g.degree()) return f;
    std::vector<Integer> rem = f.coeffs();
    const auto& gc = g.coeffs();
    const Integer& lc = gc.back();
    std::size_t dg = gc.size() - 1;
    for (std::size_t top = rem.size() - 1; top >= dg; --top) {
        Integer lead = rem[top];
        for (std::size_t j = 0; j <= top; ++j) rem[j] *= lc;
        for (std::size_t j = 0; j <= dg; ++j) {
            mpz_submul(rem[top - dg + j].get_mpz_t(), lead.get_mpz_t(), gc[j].get_mpz_t());
        }
        if (top == dg) break;
    }
    rem.resize(dg);
    return IntPoly(std::move(rem));
}

IntPoly gcd(const IntPoly& f, const IntPoly& g)
{
    if (f.is_zero() && g.is_zero()) return {};
    if (f.is_zero()) return primitive_part(g);
    if (g.is_zero()) return primitive_part(f);
    IntPoly a = primitive_part(f);
    IntPoly b = primitive_part(g);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return primitive_part(a);
}

namespace {

// Fraction-free Gaussian elimination (Bareiss); exact over Z.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    Integer det = m[n - 1][n - 1];
    return sign > 0 ? det : Integer(-det);
}

}  // namespace

Integer resultant(const IntPoly& f, const IntPoly& g)
{
    if (f.is_zero() || g.is_zero()) return 0;
    const int m = f.degree();
    const int n = g.degree();
    if (m == 0 && n == 0) return 1;
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size));
    // n rows of f, then m rows of g; coefficients in descending order.
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i <= m; ++i) s[r][r + i] = f.coeffs()[m - i];
    }
    for (int r = 0; r < m; ++r) {
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = g.coeffs()[n - i];
    }
    return bareiss_determinant(std::move(s));
}

Integer discriminant(const IntPoly& f)
{
    const int n = f.degree();
    if (n < 1) throw DomainError("discriminant needs degree >= 1");
    if (n == 1) return 1;
    Integer r = resultant(f, derivative(f));
    Integer d;
    mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 != 0) d = -d;
    return d;
}

IntPoly SquarefreeDecomposition::expand() const
{
    IntPoly acc = IntPoly::constant(unit);
    for (const auto& f : factors) {
        for (unsigned e = 0; e < f.exponent; ++e) acc *= f.poly;
    }
    return acc;
}

SquarefreeDecomposition squarefree_decomposition(const IntPoly& f)
{
    if (f.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
    SquarefreeDecomposition dec;
    IntPoly prim = primitive_part(f);
    // Musser's algorithm on primitive polynomials; every division below is exact in Z[x].
    IntPoly g = gcd(prim, derivative(prim));
    if (g.is_zero()) g = IntPoly::constant(1);
    IntPoly w = divexact(prim, g);
    unsigned i = 1;
    while (w.degree() > 0) {
        IntPoly y = gcd(w, g);
        IntPoly z = divexact(w, y);
        if (z.degree() > 0) dec.factors.push_back({primitive_part(z), i});
        g = divexact(g, y);
        w = y;
        ++i;
    }
    IntPoly product = IntPoly::constant(1);
    for (const auto& fac : dec.factors) {
        for (unsigned e = 0; e < fac.exponent; ++e) product *= fac.poly;
    }
    const Integer& lc = product.leading();
    if (!mpz_divisible_p(f.leading().get_mpz_t(), lc.get_mpz_t())) {
        throw InexactDivision("squarefree decomposition: unit is not integral");
    }
    mpz_divexact(dec.unit.get_mpz_t(), f.leading().get_mpz_t(), lc.get_mpz_t());
    if (dec.expand() != f) throw InexactDivision("squarefree decomposition does not reconstruct its input");
    return dec;
}

IntPoly squarefree_part(const SquarefreeDecomposition& dec)
{
    IntPoly acc = IntPoly::constant(1);
    for (const auto& f : dec.factors) acc *= f.poly;
    return acc;
}

namespace {

Rational rational_pow(const Rational& base, unsigned long e)
{
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

Integer integer_pow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace

Integer semidiscriminant(const IntPoly& f)
{
    const int k = f.degree();
    if (k < 1) throw DomainError("semidiscriminant needs degree >= 1");
    SquarefreeDecomposition dec = squarefree_decomposition(f);
    const auto& fs = dec.factors;

    Rational total(integer_pow(f.leading(), 2 * static_cast<unsigned long>(k) - 2));
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const IntPoly& g = fs[i].poly;
        const unsigned long n = static_cast<unsigned long>(g.degree());
        const unsigned long e = fs[i].exponent;
        if (n >= 2) {
            // prod over ordered pairs of distinct roots of g
            Rational within(discriminant(g), integer_pow(g.leading(), 2 * n - 2));
            within.canonicalize();
            if ((n * (n - 1) / 2) % 2 != 0) within = -within;
            total *= rational_pow(within, e * e);
        }
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            const IntPoly& h = fs[j].poly;
            const unsigned long m = static_cast<unsigned long>(h.degree());
            // both orders (i,j) and (j,i): (-1)^(nm) * prod(alpha - beta)^2
            Integer res = resultant(g, h);
            Rational cross(res * res, integer_pow(g.leading(), 2 * m) * integer_pow(h.leading(), 2 * n));
            cross.canonicalize();
            if ((n * m) % 2 != 0) cross = -cross;
            total *= rational_pow(cross, e * fs[j].exponent);
        }
    }
    if (total.get_den() != 1) throw InexactDivision("semidiscriminant is not an integer");
    return total.get_num();
}

}  // namespace interprime
