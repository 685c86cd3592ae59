#include "k3lat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>

namespace k3lat {

Lattice::Lattice() : Lattice(IntMatrix(0, 0)) {}

Lattice::Lattice(IntMatrix gram, std::vector<std::string> labels, std::string name) {
    require(gram.is_symmetric(), Errc::not_symmetric, "Gram matrix must be square and symmetric");
    require(labels.empty() || labels.size() == gram.rows(), Errc::dimension_mismatch,
            "label count must equal the rank");
    impl_ = std::make_shared<const Impl>(Impl{std::move(gram), std::move(labels), std::move(name), std::nullopt});
}

Lattice Lattice::renamed(std::string name) const { return Lattice(gram(), labels(), std::move(name)); }

Lattice Lattice::relabeled(std::vector<std::string> labels) const {
    return Lattice(gram(), std::move(labels), name());
}

bool Lattice::is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (mpz_odd_p(gram()(i, i).get_mpz_t())) return false;
    return true;
}

Integer Lattice::determinant() const {
    if (!impl_->det) impl_->det = k3lat::determinant(gram());
    return *impl_->det;
}

Signature Lattice::signature() const { return k3lat::signature(gram()); }

Integer Lattice::inner(const IntVector& x, const IntVector& y) const {
    require(x.size() == rank() && y.size() == rank(), Errc::dimension_mismatch, "coordinate length != rank");
    Integer s = 0;
    const auto& g = gram();
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        Integer t = 0;
        for (std::size_t j = 0; j < rank(); ++j)
            if (y[j] != 0) t += g(i, j) * y[j];
        s += x[i] * t;
    }
    return s;
}

Rational Lattice::inner(const RatVector& x, const RatVector& y) const {
    require(x.size() == rank() && y.size() == rank(), Errc::dimension_mismatch, "coordinate length != rank");
    Rational s = 0;
    const auto& g = gram();
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        Rational t = 0;
        for (std::size_t j = 0; j < rank(); ++j)
            if (y[j] != 0) t += g(i, j) * y[j];
        s += x[i] * t;
    }
    return s;
}

IntMatrix Lattice::pairing(const IntMatrix& a, const IntMatrix& b) const {
    require(a.cols() == rank() && b.cols() == rank(), Errc::dimension_mismatch, "coordinate length != rank");
    return a * gram() * b.transpose();
}

IntMatrix Lattice::restricted_gram(const IntMatrix& basis) const { return pairing(basis, basis); }

std::size_t Lattice::label_index(const std::string& label) const {
    auto it = std::find(labels().begin(), labels().end(), label);
    require(it != labels().end(), Errc::invalid_argument, "unknown basis label '" + label + "'");
    return static_cast<std::size_t>(it - labels().begin());
}

bool Lattice::same_as(const Lattice& other) const {
    return impl_ == other.impl_ || gram() == other.gram();
}

// ---------------------------------------------------------------------------

LatticeVector::LatticeVector(Lattice lattice, IntVector coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
    require(coords_.size() == lattice_.rank(), Errc::dimension_mismatch, "coordinate length != rank");
}

bool LatticeVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    require(lattice_.same_as(o.lattice_), Errc::lattice_mismatch, "vectors live in different lattices");
    IntVector c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return LatticeVector(lattice_, std::move(c));
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const { return *this + (-o); }

LatticeVector LatticeVector::operator-() const {
    IntVector c = coords_;
    for (auto& x : c) x = -x;
    return LatticeVector(lattice_, std::move(c));
}

LatticeVector operator*(const Integer& a, const LatticeVector& v) {
    IntVector c = v.coords_;
    for (auto& x : c) x *= a;
    return LatticeVector(v.lattice_, std::move(c));
}

LatticeVector basis_vector(const Lattice& lattice, std::size_t i) {
    require(i < lattice.rank(), Errc::invalid_argument, "basis index out of range");
    IntVector c(lattice.rank());
    c[i] = 1;
    return LatticeVector(lattice, std::move(c));
}

LatticeVector basis_vector(const Lattice& lattice, const std::string& label) {
    return basis_vector(lattice, lattice.label_index(label));
}

Integer inner(const LatticeVector& v, const LatticeVector& w) {
    require(v.lattice().same_as(w.lattice()), Errc::lattice_mismatch, "vectors live in different lattices");
    return v.lattice().inner(v.coords(), w.coords());
}

Integer norm(const LatticeVector& v) { return inner(v, v); }

Integer divisibility(const LatticeVector& v) {
    require(!v.is_zero(), Errc::invalid_argument, "divisibility of the zero vector");
    const auto& g = v.lattice().gram();
    Integer d = 0;
    for (std::size_t j = 0; j < v.lattice().rank(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < v.lattice().rank(); ++i) s += v[i] * g(i, j);
        d = gcd(d, s);
    }
    return d;
}

bool is_primitive_vector(const LatticeVector& v) {
    require(!v.is_zero(), Errc::invalid_argument, "primitivity of the zero vector");
    return content(v.coords()) == 1;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

// Gram of vectors given in the standard negative definite Z^n.
IntMatrix gram_in_minus_identity(const std::vector<IntVector>& vecs) {
    IntMatrix g(vecs.size(), vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < vecs.size(); ++j) g(i, j) = -dot(vecs[i], vecs[j]);
    return g;
}

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

}  // namespace

Lattice ade(char series, std::size_t n) {
    switch (series) {
    case 'A': {
        require(n >= 1, Errc::invalid_argument, "A_n needs n >= 1");
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = -2;
            if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = 1;
        }
        return Lattice(g, numbered("a", n), "A" + std::to_string(n));
    }
    case 'D': {
        require(n >= 4, Errc::invalid_argument, "D_n needs n >= 4");
        auto e = [n](int i, int s, int j) {
            IntVector v(n);
            v[i] = 1;
            v[j] = s;
            return v;
        };
        std::vector<IntVector> vecs;
        if (n == 4) {
            // f1 = e1-e2, f2 = e3-e4, f3 = e2-e3, f4 = e3+e4
            vecs = {e(0, -1, 1), e(2, -1, 3), e(1, -1, 2), e(2, 1, 3)};
            return Lattice(gram_in_minus_identity(vecs), numbered("f", 4), "D4");
        }
        for (std::size_t i = 0; i + 1 < n; ++i) vecs.push_back(e(int(i), -1, int(i + 1)));
        vecs.push_back(e(int(n - 2), 1, int(n - 1)));
        return Lattice(gram_in_minus_identity(vecs), numbered("d", n), "D" + std::to_string(n));
    }
    case 'E': {
        require(n >= 6 && n <= 8, Errc::invalid_argument, "E_n needs n in {6,7,8}");
        // Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to 4.
        const std::vector<std::pair<int, int>> edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) g(i, i) = -2;
        for (auto [a, b] : edges)
            if (std::size_t(a) <= n && std::size_t(b) <= n) g(a - 1, b - 1) = g(b - 1, a - 1) = 1;
        return Lattice(g, numbered("a", n), "E" + std::to_string(n));
    }
    default:
        fail(Errc::invalid_argument, std::string("unknown ADE series '") + series + "'");
    }
}

Lattice hyperbolic() { return Lattice(IntMatrix{{0, 1}, {1, 0}}, {"x", "y"}, "U"); }

Lattice rank_one(const Integer& a) {
    require(mpz_even_p(a.get_mpz_t()) && a != 0, Errc::odd_lattice, "rank_one needs a nonzero even integer");
    return Lattice(IntMatrix{{a}}, {"x"}, "<" + a.get_str() + ">");
}

Lattice twist(const Lattice& lattice, const Integer& a) {
    require(a != 0, Errc::invalid_argument, "twist by zero");
    return Lattice(lattice.gram().scaled(a), lattice.labels(), lattice.name() + "(" + a.get_str() + ")");
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    std::vector<std::string> labels;
    if (!a.labels().empty() && !b.labels().empty()) {
        labels = a.labels();
        labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    }
    std::string name = a.name().empty() || b.name().empty() ? std::string() : a.name() + "+" + b.name();
    if (a.rank() == 0) return b;
    if (b.rank() == 0) return a;
    return Lattice(block_diagonal(a.gram(), b.gram()), std::move(labels), std::move(name));
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
    Lattice out;
    for (const auto& p : parts) out = direct_sum(out, p);
    return out;
}

Lattice power(const Lattice& lattice, std::size_t copies) {
    Lattice out;
    for (std::size_t i = 0; i < copies; ++i) out = direct_sum(out, lattice);
    return out.renamed(lattice.name() + "^" + std::to_string(copies));
}

Lattice sublattice(const Lattice& ambient, const IntMatrix& basis, std::string name) {
    return Lattice(ambient.restricted_gram(basis), {}, std::move(name));
}

IntMatrix orthogonal_complement(const Lattice& lattice, const IntMatrix& s) {
    require(s.cols() == lattice.rank(), Errc::dimension_mismatch, "coordinate length != rank");
    require(rank(s) == s.rows(), Errc::dependent_rows, "orthogonal_complement: rows are dependent");
    // x G s^T = 0
    return integer_kernel(lattice.gram() * s.transpose());
}

// ---------------------------------------------------------------------------
// Fincke-Pohst enumeration with exact rationals.

std::vector<IntVector> short_vectors(const RatMatrix& q, const RatVector& center, const Rational& bound) {
    const std::size_t n = q.rows();
    require(q.is_symmetric() && center.size() == n, Errc::dimension_mismatch, "short_vectors shape mismatch");
    std::vector<IntVector> out;
    if (bound < 0) return out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }

    // q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
    RatMatrix a = q;
    for (std::size_t i = 0; i < n; ++i) {
        require(a(i, i) > 0, Errc::invalid_argument, "short_vectors needs a positive definite form");
        for (std::size_t j = i + 1; j < n; ++j) {
            a(j, i) = a(i, j);
            a(i, j) = a(i, j) / a(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) a(k, l) -= a(k, i) * a(i, l);
    }

    IntVector x(n);
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& budget) {
        Rational shift = 0;
        for (std::size_t j = i + 1; j < n; ++j) shift += a(i, j) * (x[j] - center[j]);
        const Rational mid = center[i] - shift;
        const Rational radius_sq = budget / a(i, i);
        const double r = std::sqrt(radius_sq.get_d());
        const double m = mid.get_d();
        Integer lo(std::floor(m - r) - 1);
        Integer hi(std::ceil(m + r) + 1);
        for (Integer v = lo; v <= hi; ++v) {
            const Rational d = Rational(v) - mid;
            const Rational used = a(i, i) * d * d;
            if (used > budget) continue;
            x[i] = v;
            if (i == 0) out.push_back(x);
            else rec(i - 1, budget - used);
        }
        x[i] = 0;
    };
    rec(n - 1, bound);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Builtins and JSON

Lattice builtin_lattice(const std::string& name) {
    static const std::regex twisted(R"(^(.+)\((-?\d+)\)$)");
    static const std::regex ade_re(R"(^([ADE])(\d+)$)");
    static const std::regex rank1(R"(^<(-?\d+)>$)");
    std::smatch m;
    if (std::regex_match(name, m, twisted)) return twist(builtin_lattice(m[1]), Integer(m[2].str())).renamed(name);
    if (std::regex_match(name, m, ade_re)) {
        const auto n = std::stoul(m[2]);
        require(n <= 64, Errc::invalid_argument, "ADE rank too large");
        return ade(m[1].str()[0], n);
    }
    if (std::regex_match(name, m, rank1)) return rank_one(Integer(m[1].str()));
    if (name == "U") return hyperbolic();
    fail(Errc::parse_error, "unknown builtin lattice '" + name + "'");
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).fits_slong_p()) row.push_back(m(i, j).get_si());
            else row.push_back(m(i, j).get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    require(j.is_array(), Errc::parse_error, "matrix must be an array of rows");
    std::vector<IntVector> rows;
    for (const auto& row : j) {
        require(row.is_array(), Errc::parse_error, "matrix row must be an array");
        IntVector r;
        for (const auto& v : row) {
            if (v.is_number_integer()) r.emplace_back(static_cast<long>(v.get<std::int64_t>()));
            else if (v.is_string()) {
                Integer x;
                require(x.set_str(v.get<std::string>(), 10) == 0, Errc::parse_error, "bad integer string");
                r.push_back(x);
            } else fail(Errc::parse_error, "matrix entries must be integers");
        }
        require(rows.empty() || r.size() == rows.front().size(), Errc::parse_error, "ragged matrix");
        rows.push_back(std::move(r));
    }
    return IntMatrix::from_rows(rows);
}

nlohmann::json lattice_to_json(const Lattice& lattice) {
    nlohmann::json j;
    j["name"] = lattice.name();
    j["gram"] = matrix_to_json(lattice.gram());
    if (!lattice.labels().empty()) j["labels"] = lattice.labels();
    return j;
}

Lattice lattice_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("gram"), Errc::parse_error, "lattice JSON needs a 'gram' field");
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        require(j["labels"].is_array(), Errc::parse_error, "'labels' must be an array");
        for (const auto& l : j["labels"]) {
            require(l.is_string(), Errc::parse_error, "labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }
    std::string name;
    if (j.contains("name")) {
        require(j["name"].is_string(), Errc::parse_error, "'name' must be a string");
        name = j["name"].get<std::string>();
    }
    IntMatrix g = matrix_from_json(j["gram"]);
    require(g.is_symmetric(), Errc::not_symmetric, "Gram matrix must be square and symmetric");
    require(labels.empty() || labels.size() == g.rows(), Errc::parse_error, "label count must equal the rank");
    return Lattice(std::move(g), std::move(labels), std::move(name));
}

}  // namespace k3lat
