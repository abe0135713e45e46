#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curbplan/analyzer.hpp"
#include "curbplan/scene.hpp"

namespace curbplan {

/// Configuration for an OpenAI-compatible chat-completions endpoint. Off by
/// default everywhere; only explicit CLI flags reach this code path.
struct RemoteAnalyzerConfig {
  std::string endpoint;  // e.g. http://host:8000/v1/chat/completions
  std::string model;
  std::string api_key;     // optional bearer token
  double timeout_s = 10.0;
};

/// Chat-completions request asking for strict JSON analyzer output. Images
/// are attached as data URLs.
nlohmann::json build_analyzer_request(const RemoteAnalyzerConfig& cfg, const Scene& scene,
                                      const std::vector<std::string>& image_data_urls);

/// Extracts and validates the analyzer report from a chat-completions
/// response body. Any malformed layer (envelope, content, report schema)
/// yields nullopt.
std::optional<AnalyzerReport> parse_analyzer_response(const std::string& body);

/// data:<media type>;base64,... URL for raw image bytes.
std::string image_data_url(const std::string& media_type, const std::string& bytes);

/// Blocking call to the remote endpoint. Returns nullopt on transport
/// errors, non-200 statuses, or malformed responses (analyzer unavailable).
std::optional<AnalyzerReport> remote_analyze(const RemoteAnalyzerConfig& cfg,
                                             const Scene& scene,
                                             const std::vector<std::string>& image_data_urls);

}  // namespace curbplan
