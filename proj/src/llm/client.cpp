#include "vchild/llm/client.hpp"

#include <cstdlib>

#include "vchild/error.hpp"
#include "vchild/llm/config.hpp"
#include "vchild/llm/url.hpp"

namespace vchild::llm {

std::string ChatRequest::prompt_text() const {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += "\n\n";
    out += m.content;
  }
  return out;
}

std::string_view to_string(FinishReason r) {
  switch (r) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kTimeout: return "timeout";
    case FinishReason::kError: return "error";
  }
  return "?";
}

std::uint64_t prompt_hash(std::string_view prompt_text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : prompt_text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

LlmConfig LlmConfig::with_env_override() const {
  LlmConfig out = *this;
  if (const char* env = std::getenv(kEndpointEnv); env && *env) out.endpoint = env;
  return out;
}

std::string Url::origin() const { return scheme + "://" + host + ":" + std::to_string(port); }

Url parse_url(std::string_view url) {
  auto bad = [&] { return Error(Errc::InvalidInput, "unsupported URL '" + std::string(url) + "'"); };
  constexpr std::string_view kHttp = "http://";
  if (!url.starts_with(kHttp)) throw bad();
  Url out;
  out.scheme = "http";
  std::string_view rest = url.substr(kHttp.size());
  std::size_t slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  out.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  std::size_t colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    out.host = std::string(authority.substr(0, colon));
    std::string_view port = authority.substr(colon + 1);
    if (port.empty() || port.size() > 5) throw bad();
    int p = 0;
    for (char c : port) {
      if (c < '0' || c > '9') throw bad();
      p = p * 10 + (c - '0');
    }
    if (p < 1 || p > 65535) throw bad();
    out.port = p;
  } else {
    out.host = std::string(authority);
  }
  if (out.host.empty()) throw bad();
  return out;
}

}  // namespace vchild::llm
