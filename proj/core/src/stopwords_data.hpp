#pragma once

#include <string_view>

namespace evrec::detail {

/// Contents of data/stopwords_en.txt, embedded at build time.
std::string_view builtin_stopword_text();

} // namespace evrec::detail
