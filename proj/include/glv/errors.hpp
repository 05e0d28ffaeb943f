#ifndef GLV_ERRORS_HPP
#define GLV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace glv {

/// Machine-readable failure kinds surfaced by the library.
enum class errc {
    self_loop,
    duplicate_vertex,
    non_positive_weight,
    duplicate_edge,
    dimension_mismatch,
    empty_system,
    non_positive_state,
    overflow,
    step_underflow,
    degenerate_intersection,
    missing_vertex,
    not_a_steady_state,
    invalid_structure,
    parse_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace glv

#endif
