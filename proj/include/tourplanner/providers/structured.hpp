#pragma once

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/jsonio.hpp"
#include "tourplanner/providers/provider.hpp"

#include <functional>
#include <string>

namespace tourplanner::providers {

// Structured replies follow a fenced single-document convention: the first
// fenced block if present, otherwise the whole reply.
std::string extract_payload(const std::string& reply);

json parse_json_payload(const std::string& reply);

// Run a structured chat: on parse failure the request is re-sent with the
// parse error appended, up to max_retries extra attempts, then SchemaError.
template <typename T>
T chat_structured(Provider& provider, ChatRequest req, int max_retries,
                  const std::function<T(const std::string&)>& parse) {
    std::string last_error;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        ChatRequest attempt_req = req;
        attempt_req.expects_structured = true;
        if (attempt > 0)
            attempt_req.user_prompt +=
                "\n\nYour previous reply could not be parsed: " + last_error +
                "\nReply again following the required format exactly.";
        std::string reply = provider.chat(attempt_req);
        try {
            return parse(reply);
        } catch (const Error& e) {
            last_error = e.what();
        } catch (const json::exception& e) {
            last_error = e.what();
        }
    }
    throw SchemaError("structured reply unparseable after retries: " + last_error);
}

} // namespace tourplanner::providers
