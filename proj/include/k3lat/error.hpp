#pragma once

#include <stdexcept>
#include <string>

namespace k3lat {

enum class Errc {
    invalid_argument,
    dimension_mismatch,
    not_symmetric,
    dependent_rows,
    degenerate_lattice,
    odd_lattice,
    not_two_elementary,
    not_integral,
    lattice_mismatch,
    not_isometry,
    cap_exceeded,
    gluing_condition,
    imprimitive,
    search_exhausted,
    parse_error,
    model_failure,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace k3lat
