#pragma once

#include <stdexcept>
#include <string>

namespace tensorclt {

enum class errc {
    dim,
    range,
    scale,
    spec,
    perm,
    not_symmetric,
    diagonal,
    not_hoeffding,
    not_normalized,
    small_n,
    degenerate,
    missing_moment,
    overflow,
    parse,
    io,
    empty,
};

inline const char* to_string(errc c) {
    switch (c) {
        case errc::dim: return "E_DIM";
        case errc::range: return "E_RANGE";
        case errc::scale: return "E_SCALE";
        case errc::spec: return "E_SPEC";
        case errc::perm: return "E_PERM";
        case errc::not_symmetric: return "E_NOT_SYMMETRIC";
        case errc::diagonal: return "E_DIAGONAL";
        case errc::not_hoeffding: return "E_NOT_HOEFFDING";
        case errc::not_normalized: return "E_NOT_NORMALIZED";
        case errc::small_n: return "E_SMALL_N";
        case errc::degenerate: return "E_DEGENERATE";
        case errc::missing_moment: return "E_MISSING_MOMENT";
        case errc::overflow: return "E_OVERFLOW";
        case errc::parse: return "E_PARSE";
        case errc::io: return "E_IO";
        case errc::empty: return "E_EMPTY";
    }
    return "E_UNKNOWN";
}

/// Library-wide exception type; `code` carries the error taxonomy entry.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

}  // namespace tensorclt
