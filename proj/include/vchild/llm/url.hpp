#pragma once

#include <string>
#include <string_view>

namespace vchild::llm {

struct Url {
  std::string scheme;  // "http"
  std::string host;
  int port = 80;
  std::string path;    // starts with '/'

  std::string origin() const;
};

/// Parses `http://host[:port][/path]`. Throws InvalidInput otherwise.
Url parse_url(std::string_view url);

}  // namespace vchild::llm
