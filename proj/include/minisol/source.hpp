#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace minisol {

// Half-open byte range into a source file.
struct Span {
    uint32_t begin = 0;
    uint32_t end = 0;

    bool operator==(const Span&) const = default;
};

struct LineCol {
    int line = 1;
    int column = 1;
};

class SourceFile {
public:
    SourceFile(std::string path, std::string text);

    const std::string& path() const { return path_; }
    const std::string& text() const { return text_; }

    LineCol line_col(uint32_t offset) const;
    std::string_view slice(Span s) const;

private:
    std::string path_;
    std::string text_;
    std::vector<uint32_t> line_starts_;
};

} // namespace minisol
