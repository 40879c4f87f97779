// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <stdexcept>
#include <string>

namespace emtrace {

/// Syntax-level failure while reading a document; carries 1-based line/column.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Well-formed input that violates a semantic rule (unresolved reference, bad value).
class SemanticError : public std::runtime_error {
  public:
    explicit SemanticError(const std::string& message) : std::runtime_error(message) {}
};

class PackageExistsError : public std::runtime_error {
  public:
    explicit PackageExistsError(const std::string& message) : std::runtime_error(message) {}
};

class IncompletePackageError : public std::runtime_error {
  public:
    explicit IncompletePackageError(const std::string& message) : std::runtime_error(message) {}
};

/// Digest mismatch; names the offending file.
class CorruptionError : public std::runtime_error {
  public:
    CorruptionError(const std::string& message, const std::string& file)
        : std::runtime_error(message + ": " + file), file_(file) {}

    const std::string& file() const { return file_; }

  private:
    std::string file_;
};

}  // namespace emtrace
