#include "minisol/source.hpp"

#include <algorithm>

namespace minisol {

SourceFile::SourceFile(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)) {
    line_starts_.push_back(0);
    for (uint32_t i = 0; i < text_.size(); i++) {
        if (text_[i] == '\n')
            line_starts_.push_back(i + 1);
    }
}

LineCol SourceFile::line_col(uint32_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    size_t line = static_cast<size_t>(it - line_starts_.begin());
    uint32_t start = line_starts_[line - 1];
    return LineCol{static_cast<int>(line), static_cast<int>(offset - start + 1)};
}

std::string_view SourceFile::slice(Span s) const {
    if (s.begin >= text_.size())
        return {};
    uint32_t end = std::min<uint32_t>(s.end, static_cast<uint32_t>(text_.size()));
    return std::string_view(text_).substr(s.begin, end - s.begin);
}

} // namespace minisol
