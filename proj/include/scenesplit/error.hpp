#pragma once

#include <stdexcept>
#include <string>

namespace scenesplit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input could not be turned into frames (unreadable file, bad header,
/// undersized frame, truncated raw stream).
class IngestError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (out-of-order frame index,
/// flush on an empty stream, empty group).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON / JSONL input. Messages carry the offending line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace scenesplit
