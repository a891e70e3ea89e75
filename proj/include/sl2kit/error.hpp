#pragma once

#include <stdexcept>
#include <string>

namespace sl2 {

// Domain errors carry a stable machine-readable code alongside the message.
// The CLI maps ParseError to exit status 2 and every other code to 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* ParseError = "ParseError";
inline constexpr const char* UnsupportedRing = "UnsupportedRing";
inline constexpr const char* RingMismatch = "RingMismatch";
inline constexpr const char* NotAUnit = "NotAUnit";
inline constexpr const char* NotUnimodular = "NotUnimodular";
inline constexpr const char* BoundExceeded = "BoundExceeded";
inline constexpr const char* NotADomain = "NotADomain";
inline constexpr const char* NonUnitDeterminant = "NonUnitDeterminant";
inline constexpr const char* NotAnEdge = "NotAnEdge";
inline constexpr const char* NotInSL = "NotInSL";
inline constexpr const char* NotInB = "NotInB";
inline constexpr const char* BaseMismatch = "BaseMismatch";
inline constexpr const char* NotComposable = "NotComposable";
inline constexpr const char* MoveNotApplicable = "MoveNotApplicable";
inline constexpr const char* NotALoop = "NotALoop";
inline constexpr const char* NotInKernel = "NotInKernel";
inline constexpr const char* NoAlgorithmFound = "NoAlgorithmFound";
inline constexpr const char* VertexNotFound = "VertexNotFound";
inline constexpr const char* LoopNotInComplex = "LoopNotInComplex";
} // namespace errc

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, const char* code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace sl2
