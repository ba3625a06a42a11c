#pragma once

#include <stdexcept>
#include <string>

namespace lp {

enum class Errc {
    EmptyWord,
    EmptyPattern,
    Parse,
    SupportsNotAdjacent,
    LineMismatch,
    NotANode,
    NoSuchEdge,
    Disconnected,
    NotReduced,
    IdentityElement,
    HasCutPoint,
    HasCutPair,
    CatalogTooSmall,
    RayHitsLine,
    InvalidArgument,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace lp
