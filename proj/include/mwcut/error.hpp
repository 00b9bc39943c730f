#ifndef MWCUT_ERROR_HPP_
#define MWCUT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mwcut {

/// Library-wide validation failure. The what() string starts with the
/// stable error name from the operation contract (e.g. "NegativeCoordinate:
/// ..."), so callers and tests can match on it.
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace mwcut

#endif  // MWCUT_ERROR_HPP_
