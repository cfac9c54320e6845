#pragma once

#include <stdexcept>
#include <string>

#include "minisol/source.hpp"

namespace minisol {

// Raised by the frontend (lexing, parsing, name/type resolution) and by
// lowering. The driver maps these to exit code 2.
class FrontendError : public std::runtime_error {
public:
    enum class Stage { Lex, Parse, Resolve, Type, Lower };

    FrontendError(Stage stage, Span span, const std::string& message)
        : std::runtime_error(message), stage_(stage), span_(span) {}

    Stage stage() const { return stage_; }
    Span span() const { return span_; }

    static const char* stage_name(Stage s) {
        switch (s) {
        case Stage::Lex: return "lex error";
        case Stage::Parse: return "parse error";
        case Stage::Resolve: return "resolve error";
        case Stage::Type: return "type error";
        case Stage::Lower: return "lower error";
        }
        return "error";
    }

private:
    Stage stage_;
    Span span_;
};

// Engine-internal failure (e.g. the fixpoint iteration limit). Indicates a
// bug in the analyzer, not a problem with the analyzed source.
class EngineError : public std::logic_error {
public:
    explicit EngineError(const std::string& message) : std::logic_error(message) {}
};

} // namespace minisol
