#include "k3lat/discriminant.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace k3lat {

Rational mod2(const Rational& x) {
    // x - 2 floor(x/2)
    Integer f;
    Integer num = x.get_num();
    Integer den = 2 * x.get_den();
    mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rational r = x - 2 * Rational(f);
    r.canonicalize();
    return r;
}

Rational mod1(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rational r = x - Rational(f);
    r.canonicalize();
    return r;
}

namespace {

using i128 = __int128;

std::int64_t pos_mod(i128 a, std::int64_t m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

std::int64_t to_i64(const Integer& x, const char* what) {
    require(x.fits_slong_p(), Errc::cap_exceeded, std::string(what) + " does not fit in 64 bits");
    return x.get_si();
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

Rational frac(std::int64_t num, std::int64_t den) {
    Rational r{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
    r.canonicalize();
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteQuadraticForm

FiniteQuadraticForm::FiniteQuadraticForm() : FiniteQuadraticForm({}, {}, {}) {}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<std::int64_t> orders, std::vector<Rational> q,
                                         std::vector<std::vector<Rational>> b) {
    auto d = std::make_shared<Data>();
    require(q.size() == orders.size() && b.size() == orders.size(), Errc::dimension_mismatch,
            "form data sizes disagree");
    for (auto o : orders) require(o >= 2, Errc::invalid_argument, "generator orders must be at least 2");
    for (std::size_t i = 0; i < b.size(); ++i) {
        require(b[i].size() == orders.size(), Errc::dimension_mismatch, "b matrix must be square");
        for (std::size_t j = 0; j < b.size(); ++j)
            require(mod1(b[i][j]) == mod1(b[j][i]), Errc::not_symmetric, "b matrix must be symmetric");
    }
    d->orders = std::move(orders);
    fill_values(*d, q, b);
    d_ = std::move(d);
}

void FiniteQuadraticForm::fill_values(Data& d, const std::vector<Rational>& q,
                                      const std::vector<std::vector<Rational>>& b) {
    std::int64_t den = 1;
    for (const auto& v : q) den = lcm64(den, to_i64(Integer(v.get_den()), "q denominator"));
    for (const auto& row : b)
        for (const auto& v : row) den = lcm64(den, to_i64(Integer(v.get_den()), "b denominator"));
    d.den = den;
    d.qn.clear();
    d.bn.assign(q.size(), std::vector<std::int64_t>(q.size()));
    for (const auto& v : q) {
        Rational s = mod2(v) * den;
        d.qn.push_back(to_i64(Integer(s.get_num()), "q numerator"));
    }
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
            Rational s = mod1(b[i][j]) * den;
            d.bn[i][j] = to_i64(Integer(s.get_num()), "b numerator");
        }
}

std::uint64_t FiniteQuadraticForm::size() const {
    std::uint64_t n = 1;
    for (auto o : orders()) {
        require(n <= (std::uint64_t(1) << 62) / std::uint64_t(o), Errc::cap_exceeded, "group too large");
        n *= std::uint64_t(o);
    }
    return n;
}

Rational FiniteQuadraticForm::q_generator(std::size_t i) const { return frac(d_->qn.at(i), d_->den); }

Rational FiniteQuadraticForm::b_generator(std::size_t i, std::size_t j) const {
    return frac(d_->bn.at(i).at(j), d_->den);
}

const Lattice& FiniteQuadraticForm::lattice() const {
    require(has_lattice(), Errc::invalid_argument, "form is not attached to a lattice");
    return *d_->lattice;
}

const RatVector& FiniteQuadraticForm::generator_lift(std::size_t i) const {
    require(has_lattice(), Errc::invalid_argument, "form is not attached to a lattice");
    return d_->lifts.at(i);
}

FqfElement FiniteQuadraticForm::element(std::vector<std::int64_t> exps) const { return FqfElement(*this, std::move(exps)); }

FqfElement FiniteQuadraticForm::zero() const { return element(std::vector<std::int64_t>(generator_count())); }

FqfElement FiniteQuadraticForm::generator(std::size_t i) const {
    std::vector<std::int64_t> e(generator_count());
    e.at(i) = 1;
    return element(std::move(e));
}

FqfElement FiniteQuadraticForm::from_index(std::uint64_t index) const {
    std::vector<std::int64_t> e(generator_count());
    for (std::size_t i = generator_count(); i-- > 0;) {
        e[i] = std::int64_t(index % std::uint64_t(orders()[i]));
        index /= std::uint64_t(orders()[i]);
    }
    return element(std::move(e));
}

std::vector<std::int64_t> FiniteQuadraticForm::snf_coordinates(const RatVector& dual) const {
    const Lattice& l = lattice();
    require(dual.size() == l.rank(), Errc::dimension_mismatch, "dual vector length != rank");
    IntVector y(l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < l.rank(); ++j) s += l.gram()(i, j) * dual[j];
        require(s.get_den() == 1, Errc::not_integral, "vector is not in the dual lattice");
        y[i] = s.get_num();
    }
    std::vector<std::int64_t> z(d_->snf_orders.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < l.rank(); ++j) s += d_->reducer(i, j) * y[j];
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(d_->snf_orders[i]));
        z[i] = r.get_si();
    }
    return z;
}

FqfElement FiniteQuadraticForm::reduce(const RatVector& dual) const {
    auto z = snf_coordinates(dual);
    if (d_->table.empty()) return element(std::move(z));
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < z.size(); ++i) idx = idx * std::uint64_t(d_->snf_orders[i]) + std::uint64_t(z[i]);
    return element(d_->table[idx]);
}

std::vector<FqfElement> FiniteQuadraticForm::enumerate(std::uint64_t cap) const {
    const std::uint64_t n = size();
    require(n <= cap, Errc::cap_exceeded, "group has " + std::to_string(n) + " elements, above the cap");
    std::vector<FqfElement> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(from_index(i));
    return out;
}

FiniteQuadraticForm FiniteQuadraticForm::with_generators(const std::vector<RatVector>& lifts,
                                                         std::uint64_t cap) const {
    require(has_lattice(), Errc::invalid_argument, "custom generators need a lattice-backed form");
    const auto& so = d_->snf_orders;
    const std::uint64_t n = size();
    require(n <= cap, Errc::cap_exceeded, "group too large for a custom generator table");

    auto d = std::make_shared<Data>();
    d->lattice = d_->lattice;
    d->reducer = d_->reducer;
    d->snf_orders = so;
    d->lifts = lifts;

    std::vector<std::vector<std::int64_t>> zs;
    for (const auto& g : lifts) {
        auto z = snf_coordinates(g);
        std::int64_t ord = 1;
        for (std::size_t i = 0; i < z.size(); ++i) ord = lcm64(ord, so[i] / std::gcd(z[i], so[i]));
        require(ord >= 2, Errc::invalid_argument, "custom generator is trivial in the discriminant group");
        d->orders.push_back(ord);
        zs.push_back(std::move(z));
    }

    std::uint64_t prod = 1;
    for (auto o : d->orders) {
        require(prod <= n, Errc::invalid_argument, "custom generators do not form a basis");
        prod *= std::uint64_t(o);
    }
    require(prod == n, Errc::invalid_argument, "custom generators do not form a basis");

    d->table.assign(n, {});
    std::vector<bool> seen(n, false);
    std::vector<std::int64_t> e(lifts.size());
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        std::uint64_t t = idx;
        for (std::size_t i = lifts.size(); i-- > 0;) {
            e[i] = std::int64_t(t % std::uint64_t(d->orders[i]));
            t /= std::uint64_t(d->orders[i]);
        }
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < so.size(); ++i) {
            i128 s = 0;
            for (std::size_t j = 0; j < lifts.size(); ++j) s += i128(e[j]) * zs[j][i];
            key = key * std::uint64_t(so[i]) + std::uint64_t(pos_mod(s, so[i]));
        }
        require(!seen[key], Errc::invalid_argument, "custom generators are dependent");
        seen[key] = true;
        d->table[key] = e;
    }

    std::vector<Rational> q;
    std::vector<std::vector<Rational>> b(lifts.size(), std::vector<Rational>(lifts.size()));
    const Lattice& l = *d_->lattice;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        q.push_back(l.inner(lifts[i], lifts[i]));
        for (std::size_t j = 0; j < lifts.size(); ++j) b[i][j] = l.inner(lifts[i], lifts[j]);
    }
    fill_values(*d, q, b);
    FiniteQuadraticForm out;
    out.d_ = std::move(d);
    return out;
}

bool FiniteQuadraticForm::is_two_elementary() const {
    return std::all_of(orders().begin(), orders().end(), [](std::int64_t o) { return o == 2; });
}

nlohmann::json FiniteQuadraticForm::to_json() const {
    nlohmann::json j;
    j["orders"] = orders();
    nlohmann::json q = nlohmann::json::array();
    nlohmann::json b = nlohmann::json::array();
    for (std::size_t i = 0; i < generator_count(); ++i) {
        q.push_back(q_generator(i).get_str());
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < generator_count(); ++k) row.push_back(b_generator(i, k).get_str());
        b.push_back(std::move(row));
    }
    j["q"] = std::move(q);
    j["b"] = std::move(b);
    return j;
}

FiniteQuadraticForm discriminant_form(const Lattice& lattice) {
    require(lattice.is_nondegenerate(), Errc::degenerate_lattice, "discriminant form of a degenerate lattice");
    require(lattice.is_even(), Errc::odd_lattice, "discriminant form needs an even lattice");
    const auto snf = smith_normal_form(lattice.gram());
    auto d = std::make_shared<FiniteQuadraticForm::Data>();
    d->lattice = lattice;
    const auto diag = snf.diagonal();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < diag.size(); ++i)
        if (diag[i] > 1) keep.push_back(i);
    d->reducer = IntMatrix(keep.size(), lattice.rank());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        const std::size_t i = keep[k];
        const std::int64_t di = to_i64(diag[i], "invariant factor");
        d->orders.push_back(di);
        d->snf_orders.push_back(di);
        d->reducer.set_row(k, snf.U.row(i));
        RatVector lift(lattice.rank());
        for (std::size_t r = 0; r < lattice.rank(); ++r) lift[r] = Rational(snf.V(r, i), diag[i]);
        d->lifts.push_back(std::move(lift));
    }
    std::vector<Rational> q;
    std::vector<std::vector<Rational>> b(keep.size(), std::vector<Rational>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        q.push_back(lattice.inner(d->lifts[i], d->lifts[i]));
        for (std::size_t j = 0; j < keep.size(); ++j) b[i][j] = lattice.inner(d->lifts[i], d->lifts[j]);
    }
    FiniteQuadraticForm::fill_values(*d, q, b);
    FiniteQuadraticForm out;
    out.d_ = std::move(d);
    return out;
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    const std::size_t na = a.generator_count(), nb = b.generator_count();
    std::vector<std::int64_t> orders = a.orders();
    orders.insert(orders.end(), b.orders().begin(), b.orders().end());
    std::vector<Rational> q;
    std::vector<std::vector<Rational>> m(na + nb, std::vector<Rational>(na + nb));
    for (std::size_t i = 0; i < na; ++i) {
        q.push_back(a.q_generator(i));
        for (std::size_t j = 0; j < na; ++j) m[i][j] = a.b_generator(i, j);
    }
    for (std::size_t i = 0; i < nb; ++i) {
        q.push_back(b.q_generator(i));
        for (std::size_t j = 0; j < nb; ++j) m[na + i][na + j] = b.b_generator(i, j);
    }
    return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(m));
}

FqfElement pair_element(const FiniteQuadraticForm& sum, const FqfElement& x, const FqfElement& y) {
    std::vector<std::int64_t> e = x.exps();
    e.insert(e.end(), y.exps().begin(), y.exps().end());
    return sum.element(std::move(e));
}

// ---------------------------------------------------------------------------
// FqfElement

FqfElement::FqfElement(FiniteQuadraticForm parent, std::vector<std::int64_t> exps)
    : parent_(std::move(parent)), exps_(std::move(exps)) {
    const auto& o = parent_.orders();
    require(exps_.size() == o.size(), Errc::dimension_mismatch, "exponent count != generator count");
    for (std::size_t i = 0; i < o.size(); ++i) exps_[i] = pos_mod(exps_[i], o[i]);
}

std::uint64_t FqfElement::index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) idx = idx * std::uint64_t(parent_.orders()[i]) + std::uint64_t(exps_[i]);
    return idx;
}

std::int64_t FqfElement::q_numerator() const {
    const auto& d = *parent_.d_;
    const std::int64_t m = 2 * d.den;
    i128 s = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        s += i128(pos_mod(i128(exps_[i]) * exps_[i], m)) * d.qn[i];
        s %= m;
        for (std::size_t j = i + 1; j < exps_.size(); ++j) {
            if (exps_[j] == 0 || d.bn[i][j] == 0) continue;
            s += 2 * (i128(pos_mod(i128(exps_[i]) * exps_[j], m)) * d.bn[i][j] % m);
            s %= m;
        }
    }
    return pos_mod(s, m);
}

std::int64_t FqfElement::b_numerator(const FqfElement& other) const {
    require(parent_.same_as(other.parent_), Errc::lattice_mismatch, "elements of different forms");
    const auto& d = *parent_.d_;
    i128 s = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        for (std::size_t j = 0; j < exps_.size(); ++j) {
            if (other.exps_[j] == 0 || d.bn[i][j] == 0) continue;
            s += i128(pos_mod(i128(exps_[i]) * other.exps_[j], d.den)) * d.bn[i][j];
            s %= d.den;
        }
    }
    return pos_mod(s, d.den);
}

Rational FqfElement::q() const { return frac(q_numerator(), parent_.d_->den); }

Rational FqfElement::b(const FqfElement& other) const { return frac(b_numerator(other), parent_.d_->den); }

bool FqfElement::is_zero() const {
    return std::all_of(exps_.begin(), exps_.end(), [](std::int64_t e) { return e == 0; });
}

std::int64_t FqfElement::order() const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        const std::int64_t d = parent_.orders()[i];
        o = lcm64(o, d / std::gcd(exps_[i], d));
    }
    return o;
}

RatVector FqfElement::lift() const {
    const std::size_t n = parent_.lattice().rank();
    RatVector out(n);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        const auto& g = parent_.generator_lift(i);
        for (std::size_t r = 0; r < n; ++r) out[r] += exps_[i] * g[r];
    }
    return out;
}

FqfElement FqfElement::operator+(const FqfElement& o) const {
    require(parent_.same_as(o.parent_), Errc::lattice_mismatch, "elements of different forms");
    std::vector<std::int64_t> e = exps_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
    return FqfElement(parent_, std::move(e));
}

FqfElement FqfElement::operator-(const FqfElement& o) const { return *this + (-o); }

FqfElement FqfElement::operator-() const { return times(-1); }

FqfElement FqfElement::times(std::int64_t k) const {
    std::vector<std::int64_t> e = exps_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = pos_mod(i128(e[i]) * k, parent_.orders()[i]);
    return FqfElement(parent_, std::move(e));
}

std::string FqfElement::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Invariants and subgroups

std::ostream& operator<<(std::ostream& os, const TwoElementaryInvariants& t) {
    return os << "(" << t.s_plus << "," << t.s_minus << "," << t.alpha << "," << t.delta << ")";
}

TwoElementaryInvariants two_elementary_invariants(const Lattice& lattice) {
    const auto form = discriminant_form(lattice);
    require(form.is_two_elementary(), Errc::not_two_elementary, "discriminant group is not 2-elementary");
    const auto sig = lattice.signature();
    TwoElementaryInvariants t;
    t.s_plus = sig.plus;
    t.s_minus = sig.minus;
    t.alpha = form.generator_count();
    // b takes values in (1/2)Z, so q is integral everywhere iff it is on generators.
    for (std::size_t i = 0; i < form.generator_count(); ++i)
        if (form.q_generator(i).get_den() != 1) t.delta = 1;
    return t;
}

std::vector<FqfElement> subgroup(const FiniteQuadraticForm& form, const std::vector<FqfElement>& gens,
                                 std::uint64_t cap) {
    for (const auto& g : gens) require(g.parent().same_as(form), Errc::lattice_mismatch, "generator of another form");
    std::unordered_set<std::uint64_t> seen{form.zero().index()};
    std::vector<FqfElement> out{form.zero()};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const auto& g : gens) {
            FqfElement y = out[head] + g;
            if (seen.insert(y.index()).second) {
                require(out.size() < cap, Errc::cap_exceeded, "subgroup exceeds the cap");
                out.push_back(std::move(y));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// FqfMorphism

FqfMorphism::FqfMorphism(FiniteQuadraticForm source, FiniteQuadraticForm target, std::vector<FqfElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    require(images_.size() == source_.generator_count(), Errc::dimension_mismatch, "one image per generator");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        require(images_[i].parent().same_as(target_), Errc::lattice_mismatch, "image outside the target form");
        require(source_.orders()[i] % images_[i].order() == 0, Errc::invalid_argument,
                "image order does not divide generator order");
    }
}

FqfMorphism FqfMorphism::identity(const FiniteQuadraticForm& form) {
    std::vector<FqfElement> imgs;
    for (std::size_t i = 0; i < form.generator_count(); ++i) imgs.push_back(form.generator(i));
    return FqfMorphism(form, form, std::move(imgs));
}

FqfMorphism FqfMorphism::from_f2_matrix(const FiniteQuadraticForm& source, const FiniteQuadraticForm& target,
                                        const std::vector<std::vector<int>>& m) {
    require(source.is_two_elementary() && target.is_two_elementary(), Errc::not_two_elementary,
            "F2 matrices need 2-elementary forms");
    require(m.size() == target.generator_count(), Errc::dimension_mismatch, "matrix rows != target generators");
    std::vector<FqfElement> imgs;
    for (std::size_t j = 0; j < source.generator_count(); ++j) {
        std::vector<std::int64_t> e;
        for (const auto& row : m) {
            require(row.size() == source.generator_count(), Errc::dimension_mismatch, "matrix cols != source generators");
            e.push_back(row[j] & 1);
        }
        imgs.push_back(target.element(std::move(e)));
    }
    return FqfMorphism(source, target, std::move(imgs));
}

FqfElement FqfMorphism::operator()(const FqfElement& x) const {
    require(x.parent().same_as(source_), Errc::lattice_mismatch, "element outside the source form");
    std::vector<std::int64_t> e(target_.generator_count());
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (x.exps()[i] == 0) continue;
        for (std::size_t j = 0; j < e.size(); ++j)
            e[j] = pos_mod(i128(e[j]) + i128(x.exps()[i]) * images_[i].exps()[j], target_.orders()[j]);
    }
    return target_.element(std::move(e));
}

FqfMorphism FqfMorphism::operator*(const FqfMorphism& g) const {
    require(g.target_.same_as(source_), Errc::lattice_mismatch, "composition of incompatible morphisms");
    std::vector<FqfElement> imgs;
    for (const auto& y : g.images_) imgs.push_back((*this)(y));
    return FqfMorphism(g.source_, target_, std::move(imgs));
}

bool FqfMorphism::is_injective() const {
    std::size_t kernel = 0;
    for (const auto& x : source_.enumerate())
        if ((*this)(x).is_zero()) ++kernel;
    return kernel == 1;
}

bool FqfMorphism::is_bijective() const { return source_.size() == target_.size() && is_injective(); }

bool FqfMorphism::scales_q_by(int sign) const {
    for (const auto& x : source_.enumerate())
        if ((*this)(x).q() != mod2(sign * x.q())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Gluing

namespace {

struct GraphInfo {
    FiniteQuadraticForm sum;
    std::vector<FqfElement> graph;
    bool well_defined = true;
    bool injective = true;
    bool isotropic = true;
};

GraphInfo graph_of(const GluingData& data, const FiniteQuadraticForm& fs, const FiniteQuadraticForm& fk) {
    require(data.H.size() == data.gamma.size(), Errc::dimension_mismatch, "one image per generator of H");
    GraphInfo info{direct_sum(fs, fk), {}, true, true, true};
    std::vector<FqfElement> gens;
    for (std::size_t i = 0; i < data.H.size(); ++i) {
        require(data.H[i].parent().same_as(fs), Errc::lattice_mismatch, "H must lie in A_S");
        require(data.gamma[i].parent().same_as(fk), Errc::lattice_mismatch, "gamma must land in A_K");
        gens.push_back(pair_element(info.sum, data.H[i], data.gamma[i]));
    }
    info.graph = subgroup(info.sum, gens);
    const std::size_t ns = fs.generator_count();
    for (const auto& g : info.graph) {
        const auto& e = g.exps();
        const bool xs = std::all_of(e.begin(), e.begin() + ns, [](std::int64_t v) { return v == 0; });
        const bool ys = std::all_of(e.begin() + ns, e.end(), [](std::int64_t v) { return v == 0; });
        if (xs && !ys) info.well_defined = false;
        if (ys && !xs) info.injective = false;
        if (g.q_numerator() != 0) info.isotropic = false;
    }
    return info;
}

FiniteQuadraticForm form_of(const std::vector<FqfElement>& elems, const Lattice& l) {
    if (!elems.empty()) {
        const auto& f = elems.front().parent();
        require(f.has_lattice() && f.lattice().same_as(l), Errc::lattice_mismatch,
                "gluing subgroup must come from the discriminant form of its lattice");
        return f;
    }
    return discriminant_form(l);
}

}  // namespace

GluedLattice glue(const GluingData& data) {
    const Lattice& s = data.S;
    const Lattice& k = data.K;
    require(s.is_even() && k.is_even(), Errc::odd_lattice, "gluing needs even lattices");
    const std::size_t ns = s.rank(), nk = k.rank(), n = ns + nk;

    std::vector<RatVector> extra;
    if (!data.H.empty()) {
        const auto fs = form_of(data.H, s);
        const auto fk = form_of(data.gamma, k);
        const auto info = graph_of(data, fs, fk);
        require(info.well_defined, Errc::gluing_condition, "gamma is not a well-defined homomorphism on H");
        require(info.injective, Errc::gluing_condition, "gamma is not injective");
        require(info.isotropic, Errc::gluing_condition, "graph of gamma is not isotropic (q_K o gamma != -q_S)");
        for (std::size_t i = 0; i < data.H.size(); ++i) {
            RatVector v = data.H[i].lift();
            RatVector w = data.gamma[i].lift();
            v.insert(v.end(), w.begin(), w.end());
            extra.push_back(std::move(v));
        }
    }

    Integer den = 1;
    for (const auto& v : extra)
        for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    IntMatrix gens(n + extra.size(), n);
    for (std::size_t i = 0; i < n; ++i) gens(i, i) = den;
    for (std::size_t r = 0; r < extra.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) {
            Rational t = extra[r][j] * den;
            gens(n + r, j) = t.get_num();
        }
    IntMatrix h = hermite_normal_form(gens);
    RatMatrix basis = to_rational(h).scaled(Rational(1) / Rational(den));

    const RatMatrix g = to_rational(block_diagonal(s.gram(), k.gram()));
    IntMatrix gram = to_integer(basis * g * basis.transpose());
    Lattice result(gram, {}, "glued");
    require(result.is_even(), Errc::gluing_condition, "glued lattice is not even");

    IntMatrix inv = to_integer(inverse(basis));
    return GluedLattice{result, basis, inv.rows_range(0, ns), inv.rows_range(ns, nk)};
}

EmbeddingReport verify_embedding_data(const GluingData& data, const FiniteQuadraticForm& ambient) {
    EmbeddingReport rep;
    std::ostringstream os;
    const auto fs = form_of(data.H, data.S);
    const auto fk = form_of(data.gamma, data.K);
    const auto info = graph_of(data, fs, fk);
    rep.monomorphism = info.well_defined && info.injective;
    rep.q_condition = info.isotropic;
    os << "graph order " << info.graph.size() << "; homomorphism " << (info.well_defined ? "yes" : "no")
       << "; injective " << (info.injective ? "yes" : "no") << "; q_K(gamma h) = -q_S(h) "
       << (info.isotropic ? "yes" : "no");

    // Gamma-perp / Gamma, compared with the ambient form.
    const auto& sum = info.sum;
    const std::uint64_t total = sum.size();
    require(total <= (std::uint64_t(1) << 22), Errc::cap_exceeded, "A_S + A_K too large to enumerate");
    std::unordered_set<std::uint64_t> graph_idx;
    for (const auto& g : info.graph) graph_idx.insert(g.index());

    std::vector<std::pair<std::int64_t, Rational>> quotient;
    std::unordered_set<std::uint64_t> reps;
    for (std::uint64_t i = 0; i < total; ++i) {
        FqfElement x = sum.from_index(i);
        bool perp = true;
        for (const auto& g : info.graph)
            if (x.b_numerator(g) != 0) {
                perp = false;
                break;
            }
        if (!perp) continue;
        std::uint64_t best = i;
        for (const auto& g : info.graph) best = std::min(best, (x + g).index());
        if (!reps.insert(best).second) continue;
        std::int64_t ord = 1;
        for (FqfElement y = x; !graph_idx.count(y.index()); y = y + x) ++ord;
        quotient.emplace_back(ord, x.q());
    }
    std::vector<std::pair<std::int64_t, Rational>> amb;
    for (const auto& a : ambient.enumerate()) amb.emplace_back(a.order(), a.q());
    auto less = [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    };
    std::sort(quotient.begin(), quotient.end(), less);
    std::sort(amb.begin(), amb.end(), less);
    rep.ambient_match = quotient == amb;
    os << "; perp/graph order " << quotient.size() << " vs ambient " << amb.size();
    rep.details = os.str();
    return rep;
}

}  // namespace k3lat
