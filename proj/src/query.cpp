#include "k3lat/query.hpp"

#include <fstream>
#include <sstream>

#include "k3lat/heegner.hpp"

namespace k3lat {

namespace {

nlohmann::ordered_json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

nlohmann::ordered_json check_json(const std::string& id, bool ok, const std::string& details) {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["status"] = ok ? "pass" : "fail";
    j["details"] = details;
    return j;
}

}  // namespace

Lattice load_lattice(const std::string& name_or_path) {
    std::ifstream in(name_or_path);
    if (!in) return builtin_lattice(name_or_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, name_or_path + ": " + e.what());
    }
    return lattice_from_json(j);
}

nlohmann::ordered_json lattice_summary(const Lattice& l) {
    nlohmann::ordered_json j;
    j["name"] = l.name();
    j["rank"] = l.rank();
    Signature s = l.signature();
    j["signature"] = {s.plus, s.minus, s.zero};
    j["determinant"] = integer_json(l.determinant());
    j["even"] = l.is_even();
    j["unimodular"] = l.is_unimodular();
    if (l.is_nondegenerate()) {
        nlohmann::ordered_json d;
        try {
            FiniteQuadraticForm f = discriminant_form(l);
            d["invariant_factors"] = f.orders();
            nlohmann::ordered_json q = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < f.generator_count(); ++i) q.push_back(to_string(f.q_generator(i)));
            d["generator_q"] = q;
            if (l.is_even() && f.is_two_elementary()) {
                auto t = two_elementary_invariants(l);
                d["two_elementary"] = {t.s_plus, t.s_minus, t.alpha, t.delta};
            }
        } catch (const Error& e) {
            d["error"] = e.what();
        }
        j["discriminant"] = d;
    }
    j["gram"] = nlohmann::ordered_json::parse(matrix_to_json(l.gram()).dump());
    return j;
}

std::string lattice_summary_text(const Lattice& l) {
    const nlohmann::ordered_json j = lattice_summary(l);
    std::ostringstream os;
    os << "name: " << j["name"].get<std::string>() << "\n";
    os << "rank: " << j["rank"] << "\n";
    os << "signature: (" << j["signature"][0] << "," << j["signature"][1] << "," << j["signature"][2] << ")\n";
    os << "determinant: " << j["determinant"].dump() << "\n";
    os << "even: " << (j["even"].get<bool>() ? "yes" : "no") << "\n";
    os << "unimodular: " << (j["unimodular"].get<bool>() ? "yes" : "no") << "\n";
    if (j.contains("discriminant")) {
        const auto& d = j["discriminant"];
        if (d.contains("invariant_factors")) os << "discriminant group: " << d["invariant_factors"].dump() << "\n";
        if (d.contains("generator_q")) os << "q on generators: " << d["generator_q"].dump() << "\n";
        if (d.contains("two_elementary")) os << "2-elementary (s+,s-,a,d): " << d["two_elementary"].dump() << "\n";
        if (d.contains("error")) os << "discriminant form: " << d["error"].get<std::string>() << "\n";
    }
    return os.str();
}

IntVector parse_lminus_vector(const std::string& csv) {
    IntVector r;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        require(b != std::string::npos, Errc::parse_error, "empty coordinate in '" + csv + "'");
        item = item.substr(b, e - b + 1);
        Integer v;
        require(v.set_str(item, 10) == 0, Errc::parse_error, "not an integer: '" + item + "'");
        r.push_back(v);
    }
    require(!csv.empty() && csv.back() != ',', Errc::parse_error, "empty coordinate in '" + csv + "'");
    require(r.size() == 14, Errc::parse_error, "expected 14 coordinates, got " + std::to_string(r.size()));
    return r;
}

HeegnerQuery query_heegner(const KondoModel& m, const IntVector& r) {
    const HeegnerInvariants h = heegner_invariants(m, r);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool ok = true;
    auto add = [&](const std::string& id, bool pass, const std::string& details) {
        checks.push_back(check_json(id, pass, details));
        ok = ok && pass;
    };

    const LambdaSublattice lam = lambda_of(m, r);
    add("lambda-primitive", lam.primitive, "gcd of 2x2 minors " + lam.minors_gcd.get_str());

    const std::vector<Integer> shortcut = h.index == 2 ? std::vector<Integer>{2, 2} : std::vector<Integer>{2};
    add("m-group-shortcut", h.m_group == shortcut, "full pipeline vs divisibility of r");
    add("index-two-odd-type", h.index == 1 || h.type % 2 == 1, "type " + std::to_string(h.type));

    if (h.type % 2 == 0) {
        const C3Check c = check_c3(m, r);
        add("k-half-outside-glue-group", c.quotient && c.discriminant && c.parity,
            std::string("quotient ") + (c.quotient ? "yes" : "no") + ", discriminant " +
                (c.discriminant ? "yes" : "no") + ", parity " + (c.parity ? "yes" : "no"));
    }
    if (h.min_degree) {
        const IntVector x = find_witness(h.type, h.index);
        const WitnessCheck w = check_witness(h.type, h.index, x);
        add("degree-witness", w.ok(), w.describe());
    }

    nlohmann::ordered_json j;
    j["type"] = h.type;
    j["index"] = h.index;
    j["m_group"] = nlohmann::ordered_json::array();
    for (const auto& f : h.m_group) j["m_group"].push_back(integer_json(f));
    j["min_degree"] = h.min_degree ? nlohmann::ordered_json(*h.min_degree) : nlohmann::ordered_json(nullptr);
    j["checks"] = checks;
    j["r"] = nlohmann::ordered_json::array();
    for (const auto& c : r) j["r"].push_back(integer_json(c));
    return {j, ok};
}

nlohmann::json dump_model(const KondoModel& m) {
    nlohmann::json j;
    j["lattices"] = {
        lattice_to_json(m.del_pezzo.lattice.renamed("del_pezzo")),
        lattice_to_json(m.lplus.renamed("L+")),
        lattice_to_json(m.lminus.renamed("L-")),
        lattice_to_json(m.k3.lattice.renamed("L_K3")),
    };
    j["isometries"] = {
        {"sigma_plus", matrix_to_json(m.sigma_plus.matrix())},
        {"sigma_minus", matrix_to_json(m.sigma_minus.matrix())},
        {"sigma_k3", matrix_to_json(m.sigma_k3.matrix())},
        {"j1", matrix_to_json(j1_matrix())},
        {"j2", matrix_to_json(j2_matrix())},
    };
    // Rows of the glued basis in L+ + L- coordinates, as exact fractions.
    nlohmann::json basis = nlohmann::json::array();
    for (std::size_t i = 0; i < m.k3.basis.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.k3.basis.cols(); ++c) row.push_back(to_string(m.k3.basis(i, c)));
        basis.push_back(row);
    }
    j["glue"] = {
        {"basis", basis},
        {"lplus_embedding", matrix_to_json(m.k3.s_embedding)},
        {"lminus_embedding", matrix_to_json(m.k3.k_embedding)},
    };
    // 8x8 over F2, column j = image of e~j/2 in (t1/2, t2/2, alpha) exponents.
    nlohmann::json cols = nlohmann::json::array();
    for (std::size_t i = 0; i < 8; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < 8; ++c) row.push_back(m.gamma.images()[c].exps()[i]);
        cols.push_back(row);
    }
    j["gamma"] = {
        {"matrix", cols},
        {"printed", m.printed_gamma},
        {"distance_to_printed", m.gamma_search.distance},
        {"k_half_image", m.gamma(k_half(m)).exps()},
    };
    j["k_tilde"] = nlohmann::json::array();
    for (const auto& c : m.k_tilde) j["k_tilde"].push_back(c.get_si());
    return j;
}

}  // namespace k3lat
