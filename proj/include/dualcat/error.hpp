#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualcat {

enum class ErrorKind {
    MalformedInput,
    DuplicateId,
    UnknownObject,
    UnknownMorphism,
    MissingComposite,
    NotAssociative,
    NotLoopFree,
    NotFunctorial,
    DimensionMismatch,
    NotAComplex,
    NotAChainMap,
    NotACycleImage,
    NotPointwiseFree,
    VarianceMismatch,
    UnknownFace,
    UnknownMethod,
    VertexClash,
    NotAPoset,
    NotFullSubcategory,
    NotClosed,
    DualizingNotPointwiseFree,
    NotCertified,
    RankNotOne,
    MapNotUnit,
    NotManifoldLike,
    NotOrientable,
    OutOfRange,
    UnknownName,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotLoopFree: return "NotLoopFree";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotAChainMap: return "NotAChainMap";
    case ErrorKind::NotACycleImage: return "NotACycleImage";
    case ErrorKind::NotPointwiseFree: return "NotPointwiseFree";
    case ErrorKind::VarianceMismatch: return "VarianceMismatch";
    case ErrorKind::UnknownFace: return "UnknownFace";
    case ErrorKind::UnknownMethod: return "UnknownMethod";
    case ErrorKind::VertexClash: return "VertexClash";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotFullSubcategory: return "NotFullSubcategory";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::DualizingNotPointwiseFree: return "DualizingNotPointwiseFree";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::MapNotUnit: return "MapNotUnit";
    case ErrorKind::NotManifoldLike: return "NotManifoldLike";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::UnknownName: return "UnknownName";
    }
    return "Unknown";
}

/// Every library failure is reported as an Error carrying a machine-readable
/// kind and, where one exists, a witness (offending ids, degrees, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::vector<std::string> witness = {})
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind),
          witness_(std::move(witness))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::vector<std::string> witness_;
};

} // namespace dualcat
