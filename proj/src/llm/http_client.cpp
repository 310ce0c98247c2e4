#include "vchild/llm/http_client.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "vchild/error.hpp"

namespace vchild::llm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

FinishReason finish_from(std::string_view reason) {
  return reason == "length" ? FinishReason::kLength : FinishReason::kStop;
}

}  // namespace

HttpChatClient::HttpChatClient(const std::string& endpoint) : url_(parse_url(endpoint)) {}

std::string chat_request_body(const ChatRequest& request) {
  nlohmann::json body;
  body["model"] = request.model;
  body["messages"] = nlohmann::json::array();
  for (const auto& m : request.messages) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  body["stream"] = false;
  // Ollama's native route reads generation settings from "options".
  body["options"] = {{"temperature", request.temperature}, {"num_predict", request.max_tokens}};
  return body.dump();
}

ChatReply parse_chat_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("reply is not JSON: ") + e.what());
  }
  ChatReply reply;
  if (doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
    const auto& choice = doc["choices"][0];
    if (!choice.contains("message") || !choice["message"].contains("content") ||
        !choice["message"]["content"].is_string()) {
      throw Error(Errc::InvalidInput, "choices[0].message.content missing");
    }
    reply.text = choice["message"]["content"].get<std::string>();
    reply.finish = finish_from(choice.value("finish_reason", std::string("stop")));
    return reply;
  }
  if (doc.contains("message") && doc["message"].is_object() && doc["message"].contains("content") &&
      doc["message"]["content"].is_string()) {
    reply.text = doc["message"]["content"].get<std::string>();
    reply.finish = finish_from(doc.value("done_reason", std::string("stop")));
    return reply;
  }
  throw Error(Errc::InvalidInput, "unrecognised chat completion response");
}

ChatReply HttpChatClient::complete(const ChatRequest& request) {
  const auto start = Clock::now();
  ChatReply reply;

  httplib::Client client(url_.host, url_.port);
  const auto timeout = request.timeout;
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

  auto result = client.Post(url_.path, chat_request_body(request), "application/json");
  reply.latency_ms = ms_since(start);

  if (!result) {
    const auto err = result.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && reply.latency_ms >= static_cast<double>(timeout.count()));
    reply.finish = timed_out ? FinishReason::kTimeout : FinishReason::kError;
    reply.error = httplib::to_string(err);
    return reply;
  }
  if (result->status != 200) {
    reply.finish = FinishReason::kError;
    reply.error = "HTTP " + std::to_string(result->status);
    return reply;
  }
  try {
    ChatReply parsed = parse_chat_response(result->body);
    parsed.latency_ms = reply.latency_ms;
    return parsed;
  } catch (const Error& e) {
    reply.finish = FinishReason::kError;
    reply.error = e.what();
    return reply;
  }
}

}  // namespace vchild::llm
