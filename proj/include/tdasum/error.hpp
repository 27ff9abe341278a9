#ifndef TDASUM_ERROR_HPP
#define TDASUM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tdasum {

enum class Errc {
  RawPairInverted,
  EmptyField,
  BadTiling,
  EmptyCloud,
  BadBandwidth,
  TooFewPixels,
  EmptySilhouette,
  EmptyDiagram,
  GridMismatch,
  EmptyInput,
  BadP,
  TooFewCurves,
  DegenerateSigma,
  EmptyGroup,
  BadK,
  EmptyCandidates,
  BadDim,
  BadConfig,
  BadFile,
};

const char* errc_name(Errc code);

/// Carries one of the error codes above next to a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace tdasum

#endif
