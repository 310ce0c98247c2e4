#pragma once

#include <nlohmann/json.hpp>

#include "vchild/session/session.hpp"

namespace vchild::session {

nlohmann::json to_json(const Annotations& a);
nlohmann::json to_json(const ChatMessage& m);
Annotations annotations_from_json(const nlohmann::json& j);
ChatMessage message_from_json(const nlohmann::json& j);

}  // namespace vchild::session
