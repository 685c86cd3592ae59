#include "k3lat/isometry.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace k3lat {

Isometry::Isometry(Lattice lattice, IntMatrix matrix) : lattice_(std::move(lattice)), matrix_(std::move(matrix)) {
    const std::size_t n = lattice_.rank();
    require(matrix_.rows() == n && matrix_.cols() == n, Errc::dimension_mismatch, "isometry matrix must be rank x rank");
    require(matrix_.transpose() * lattice_.gram() * matrix_ == lattice_.gram(), Errc::not_isometry,
            "matrix does not preserve the Gram form");
    require(abs(determinant(matrix_)) == 1, Errc::not_isometry, "isometry must be invertible over Z");
}

Isometry Isometry::identity(const Lattice& lattice) { return Isometry(lattice, IntMatrix::identity(lattice.rank())); }

IntVector Isometry::apply(const IntVector& x) const {
    require(x.size() == matrix_.cols(), Errc::dimension_mismatch, "vector length != rank");
    IntVector y(matrix_.rows());
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j) y[i] += matrix_(i, j) * x[j];
    return y;
}

RatVector Isometry::apply(const RatVector& x) const {
    require(x.size() == matrix_.cols(), Errc::dimension_mismatch, "vector length != rank");
    RatVector y(matrix_.rows());
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j) y[i] += matrix_(i, j) * x[j];
    return y;
}

LatticeVector Isometry::operator()(const LatticeVector& x) const {
    require(x.lattice().same_as(lattice_), Errc::lattice_mismatch, "vector from another lattice");
    return LatticeVector(lattice_, apply(x.coords()));
}

Isometry Isometry::operator*(const Isometry& g) const {
    require(g.lattice_.same_as(lattice_), Errc::lattice_mismatch, "isometries of different lattices");
    return Isometry(lattice_, matrix_ * g.matrix_);
}

Isometry Isometry::inverse() const { return Isometry(lattice_, to_integer(k3lat::inverse(to_rational(matrix_)))); }

Isometry Isometry::power(std::int64_t n) const {
    Isometry base = n < 0 ? inverse() : *this;
    std::uint64_t e = n < 0 ? std::uint64_t(-n) : std::uint64_t(n);
    IntMatrix acc = IntMatrix::identity(lattice_.rank());
    IntMatrix b = base.matrix_;
    for (; e; e >>= 1) {
        if (e & 1) acc = acc * b;
        b = b * b;
    }
    return Isometry(lattice_, acc);
}

bool Isometry::is_identity() const { return matrix_ == IntMatrix::identity(lattice_.rank()); }

Isometry direct_sum(const Isometry& f, const Isometry& g) {
    return Isometry(direct_sum(f.lattice(), g.lattice()), block_diagonal(f.matrix(), g.matrix()));
}

Isometry reflection(const Lattice& lattice, const IntVector& v) {
    const Integer vv = lattice.inner(v, v);
    require(vv != 0, Errc::invalid_argument, "reflection in an isotropic vector");
    const std::size_t n = lattice.rank();
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        // image of basis vector j: b_j - 2 (b_j, v)/(v,v) v
        Integer bv = 0;
        for (std::size_t k = 0; k < n; ++k) bv += lattice.gram()(j, k) * v[k];
        Integer num = 2 * bv;
        require(num % vv == 0, Errc::not_integral, "reflection is not integral on this lattice");
        Integer c = num / vv;
        for (std::size_t i = 0; i < n; ++i) m(i, j) -= c * v[i];
    }
    return Isometry(lattice, std::move(m));
}

bool verify_order(const Isometry& f, std::size_t n) {
    if (n == 0) return false;
    Isometry p = Isometry::identity(f.lattice());
    for (std::size_t m = 1; m <= n; ++m) {
        p = f * p;
        if (p.is_identity()) return m == n;
    }
    return false;
}

IntMatrix eigenlattice(const Isometry& f, int eigenvalue) {
    IntMatrix d = f.matrix() - IntMatrix::identity(f.lattice().rank()).scaled(Integer(eigenvalue));
    // rows x with (M - l) x^T = 0, i.e. x (M - l)^T = 0
    return integer_kernel(d.transpose());
}

FqfMorphism induced_on_discriminant(const Isometry& f, const FiniteQuadraticForm& form) {
    require(form.has_lattice() && form.lattice().same_as(f.lattice()), Errc::lattice_mismatch,
            "form is not the discriminant form of the isometry's lattice");
    std::vector<FqfElement> imgs;
    for (std::size_t i = 0; i < form.generator_count(); ++i) imgs.push_back(form.reduce(f.apply(form.generator_lift(i))));
    for (std::size_t i = 0; i < imgs.size(); ++i) {
        require(imgs[i].q() == form.q_generator(i), Errc::model_failure, "induced map does not preserve q");
        for (std::size_t j = i + 1; j < imgs.size(); ++j)
            require(imgs[i].b(imgs[j]) == form.b_generator(i, j), Errc::model_failure, "induced map does not preserve b");
    }
    return FqfMorphism(form, form, std::move(imgs));
}

std::vector<std::vector<FqfElement>> orbits(const std::vector<FqfMorphism>& gens,
                                            const std::vector<FqfElement>& elements) {
    if (elements.empty()) return {};
    const auto& form = elements.front().parent();
    for (const auto& e : elements) require(e.parent().same_as(form), Errc::lattice_mismatch, "mismatched parents");
    for (const auto& g : gens)
        require(g.source().same_as(form) && g.target().same_as(form), Errc::lattice_mismatch,
                "generator acts on another form");

    std::vector<FqfElement> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    std::unordered_set<std::uint64_t> members;
    for (const auto& e : sorted) members.insert(e.index());
    std::unordered_set<std::uint64_t> done;
    std::vector<std::vector<FqfElement>> out;
    for (const auto& start : sorted) {
        if (done.count(start.index())) continue;
        std::vector<FqfElement> orbit{start};
        done.insert(start.index());
        for (std::size_t head = 0; head < orbit.size(); ++head)
            for (const auto& g : gens) {
                FqfElement y = g(orbit[head]);
                if (done.insert(y.index()).second) {
                    require(members.count(y.index()), Errc::invalid_argument, "element set is not invariant");
                    orbit.push_back(std::move(y));
                }
            }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closure

GroupClosure::GroupClosure(FiniteQuadraticForm form, std::vector<std::uint64_t> keys, std::size_t width)
    : form_(std::move(form)), keys_(std::move(keys)), width_(width) {}

FqfMorphism GroupClosure::element(std::size_t i) const {
    require(i < size(), Errc::invalid_argument, "group element index out of range");
    const std::size_t k = form_.generator_count();
    std::vector<FqfElement> imgs;
    for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t idx = width_ == 1 && k <= 8 && form_.is_two_elementary() ? (keys_[i] >> (8 * j)) & 0xff
                                                                                : keys_[i * width_ + j];
        imgs.push_back(form_.from_index(idx));
    }
    return FqfMorphism(form_, form_, std::move(imgs));
}

namespace {

// Over (Z/2)^k with k <= 8: byte j of a key is the index of the image of
// generator j, and index bit (k-1-i) is exponent i, so maps act by XOR.
std::uint64_t pack(const FqfMorphism& f) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < f.images().size(); ++j) key |= f.images()[j].index() << (8 * j);
    return key;
}

inline std::uint64_t apply_packed(std::uint64_t key, std::uint64_t x, std::size_t k) {
    std::uint64_t y = 0;
    for (std::size_t j = 0; j < k; ++j)
        if ((x >> (k - 1 - j)) & 1) y ^= (key >> (8 * j)) & 0xff;
    return y;
}

inline std::uint64_t compose_packed(std::uint64_t f, std::uint64_t g, std::size_t k) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < k; ++j) out |= apply_packed(f, (g >> (8 * j)) & 0xff, k) << (8 * j);
    return out;
}

}  // namespace

GroupClosure group_closure(const std::vector<FqfMorphism>& gens, std::size_t cap) {
    require(cap >= 1, Errc::invalid_argument, "closure cap must be positive");
    require(!gens.empty(), Errc::invalid_argument, "closure needs at least one generator (pass the identity)");
    const FiniteQuadraticForm& form = gens.front().source();
    for (const auto& g : gens)
        require(g.source().same_as(form) && g.target().same_as(form), Errc::lattice_mismatch,
                "generators act on different forms");
    const std::size_t k = form.generator_count();

    if (form.is_two_elementary() && k <= 8) {
        std::vector<std::uint64_t> gk;
        for (const auto& g : gens) gk.push_back(pack(g));
        std::uint64_t id = pack(FqfMorphism::identity(form));
        std::unordered_set<std::uint64_t> seen{id};
        std::vector<std::uint64_t> out{id};
        for (std::size_t head = 0; head < out.size(); ++head)
            for (auto s : gk) {
                std::uint64_t y = compose_packed(s, out[head], k);
                if (seen.insert(y).second) {
                    require(out.size() < cap, Errc::cap_exceeded,
                            "group closure exceeds the cap of " + std::to_string(cap) + " elements");
                    out.push_back(y);
                }
            }
        std::sort(out.begin(), out.end());
        return GroupClosure(form, std::move(out), 1);
    }

    auto key_of = [](const FqfMorphism& f) {
        std::vector<std::uint64_t> key;
        for (const auto& e : f.images()) key.push_back(e.index());
        return key;
    };
    std::vector<FqfMorphism> queue{FqfMorphism::identity(form)};
    std::vector<std::vector<std::uint64_t>> keys{key_of(queue.front())};
    std::set<std::vector<std::uint64_t>> seen{keys.front()};
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (const auto& s : gens) {
            FqfMorphism y = s * queue[head];
            auto key = key_of(y);
            if (seen.insert(key).second) {
                require(queue.size() < cap, Errc::cap_exceeded,
                        "group closure exceeds the cap of " + std::to_string(cap) + " elements");
                queue.push_back(std::move(y));
            }
        }
    std::vector<std::uint64_t> flat;
    for (const auto& key : seen) flat.insert(flat.end(), key.begin(), key.end());
    return GroupClosure(form, std::move(flat), std::max<std::size_t>(k, 1));
}

}  // namespace k3lat
