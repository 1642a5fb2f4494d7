#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcfg {

/// Base class for every error the toolkit throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rule was applied to the wrong number of children.
class ArityError : public Error {
public:
    ArityError(std::size_t expected, std::size_t got)
        : Error("rule expects " + std::to_string(expected) + " children, got " + std::to_string(got)),
          expected_(expected), got_(got) {}
    std::size_t expected() const noexcept { return expected_; }
    std::size_t got() const noexcept { return got_; }

private:
    std::size_t expected_;
    std::size_t got_;
};

/// Child `index` (1-based) has a head that differs from the rule's RHS entry.
class HeadMismatch : public Error {
public:
    HeadMismatch(std::size_t index, const std::string& expected, const std::string& got)
        : Error("child " + std::to_string(index) + " has head " + got + ", rule expects " + expected),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A derivation tree violates its structural invariants at some node.
class StructuralError : public Error {
public:
    StructuralError(std::string path, const std::string& reason)
        : Error("at node " + path + ": " + reason), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A node path does not address a node of the tree.
class PathError : public Error {
public:
    using Error::Error;
};

/// Subtree substitution with a replacement whose root rule differs.
class LabelMismatch : public Error {
public:
    using Error::Error;
};

/// The operation does not support this grammar (e.g. deleting grammars in the recognizer).
class UnsupportedGrammar : public Error {
public:
    using Error::Error;
};

/// Bad user input: foreign letters, exponents violating a preorder, bad indices.
class InputError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap was exceeded.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

/// Syntax error in a grammar or preorder file.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::size_t column, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          file_(std::move(file)), line_(line), column_(column) {}
    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string file_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace mcfg
