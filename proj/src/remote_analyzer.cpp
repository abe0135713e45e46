#include "curbplan/remote_analyzer.hpp"

#include <cmath>
#include <sstream>

#include <httplib.h>

namespace curbplan {

using nlohmann::json;

namespace {

std::string base64_encode(const std::string& in) {
  static const char table[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  size_t i = 0;
  while (i + 2 < in.size()) {
    const unsigned v = (static_cast<unsigned char>(in[i]) << 16) |
                       (static_cast<unsigned char>(in[i + 1]) << 8) |
                       static_cast<unsigned char>(in[i + 2]);
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out.push_back(table[(v >> 6) & 63]);
    out.push_back(table[v & 63]);
    i += 3;
  }
  const size_t rest = in.size() - i;
  if (rest == 1) {
    const unsigned v = static_cast<unsigned char>(in[i]) << 16;
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    const unsigned v = (static_cast<unsigned char>(in[i]) << 16) |
                       (static_cast<unsigned char>(in[i + 1]) << 8);
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out.push_back(table[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string scene_context(const Scene& scene) {
  std::ostringstream os;
  os << "Destination at local (" << scene.destination.x << ", " << scene.destination.y
     << ") meters. " << scene.buildings.size() << " building footprint(s): ";
  for (const auto& b : scene.buildings) {
    os << "building " << b.id << " [";
    for (size_t i = 0; i < b.footprint.points.size(); ++i) {
      if (i) os << ", ";
      os << "(" << b.footprint.points[i].x << ", " << b.footprint.points[i].y << ")";
    }
    os << "] ";
  }
  os << "Curb signs to decode, by rule id:";
  for (const auto& r : scene.rules) {
    if (r.source == RuleSource::vlm) os << " " << r.id;
  }
  return os.str();
}

}  // namespace

std::string image_data_url(const std::string& media_type, const std::string& bytes) {
  return "data:" + media_type + ";base64," + base64_encode(bytes);
}

json build_analyzer_request(const RemoteAnalyzerConfig& cfg, const Scene& scene,
                            const std::vector<std::string>& image_data_urls) {
  const std::string prompt =
      "You analyze cached satellite and street-view imagery of a delivery "
      "destination. Identify building entrances and decode curbside parking "
      "signs. Respond with a single JSON object and nothing else, matching: "
      "{\"entrances\": [{\"id\": int, \"position\": [x_m, y_m], \"kind\": "
      "\"front|side|rear|loading\", \"confidence\": (0,1]}], \"sign_readings\": "
      "[{\"rule_id\": int, \"legible\": bool, \"confidence\": (0,1]}], "
      "\"passes_used\": int}. Positions are meters east/north of the scene "
      "origin. Scene context: " +
      scene_context(scene);

  json content = json::array();
  content.push_back(json{{"type", "text"}, {"text", prompt}});
  for (const auto& url : image_data_urls) {
    content.push_back(json{{"type", "image_url"}, {"image_url", json{{"url", url}}}});
  }
  return json{{"model", cfg.model},
              {"messages", json::array({json{{"role", "user"}, {"content", content}}})},
              {"temperature", 0.0},
              {"response_format", json{{"type", "json_object"}}}};
}

std::optional<AnalyzerReport> parse_analyzer_response(const std::string& body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  const auto choices = doc.find("choices");
  if (choices == doc.end() || !choices->is_array() || choices->empty()) return std::nullopt;
  const auto& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message")) return std::nullopt;
  const auto& message = first["message"];
  if (!message.is_object() || !message.contains("content") ||
      !message["content"].is_string()) {
    return std::nullopt;
  }
  json report = json::parse(message["content"].get<std::string>(), nullptr, false);
  if (report.is_discarded()) return std::nullopt;
  return parse_analyzer_report(report);
}

std::optional<AnalyzerReport> remote_analyze(const RemoteAnalyzerConfig& cfg,
                                             const Scene& scene,
                                             const std::vector<std::string>& image_data_urls) {
  // split endpoint into base and path
  const auto scheme_end = cfg.endpoint.find("://");
  if (scheme_end == std::string::npos) return std::nullopt;
  const auto path_start = cfg.endpoint.find('/', scheme_end + 3);
  const std::string base =
      path_start == std::string::npos ? cfg.endpoint : cfg.endpoint.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/v1/chat/completions" : cfg.endpoint.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(static_cast<time_t>(cfg.timeout_s),
                                static_cast<time_t>(std::fmod(cfg.timeout_s, 1.0) * 1e6));
  client.set_read_timeout(static_cast<time_t>(cfg.timeout_s), 0);
  httplib::Headers headers;
  if (!cfg.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + cfg.api_key);
  }

  const auto body = build_analyzer_request(cfg, scene, image_data_urls).dump();
  const auto res = client.Post(path, headers, body, "application/json");
  if (!res || res->status != 200) return std::nullopt;
  return parse_analyzer_response(res->body);
}

}  // namespace curbplan
