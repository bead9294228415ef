#include "cjf/error.hpp"

namespace cjf {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::not_primitive: return "NotPrimitive";
        case Errc::cap_exceeded: return "CapExceeded";
        case Errc::missing_assertion: return "MissingAssertion";
        case Errc::out_of_domain: return "OutOfDomain";
        case Errc::underivable: return "Underivable";
        case Errc::timeout: return "Timeout";
        case Errc::wrong_length: return "WrongLength";
        case Errc::inconsistent: return "Inconsistent";
        case Errc::unsupported: return "Unsupported";
        case Errc::overlapping_pairs: return "OverlappingPairs";
        case Errc::duplicate_suffix: return "DuplicateSuffix";
        case Errc::not_conjugate: return "NotConjugate";
        case Errc::wrong_order: return "WrongOrder";
        case Errc::invalid_quadruple: return "InvalidQuadruple";
        case Errc::overlap: return "Overlap";
        case Errc::parse_error: return "ParseError";
        case Errc::io_error: return "IoError";
    }
    return "Error";
}

}  // namespace cjf
