// Copyright 2026 The Sodium Scout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP front end:
//   GET  /health
//   GET  /items?limit=&offset=
//   POST /sodium-need   {profile, scenario}
//   POST /recommend     {profile, scenario, query?, k?, meal_fraction?}
// Errors are {"code","message"} with 400 (malformed), 422 (domain), 500.

#pragma once

#include <charconv>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "httplib.h"
#include "sodium_scout/catalog.hpp"
#include "sodium_scout/engine.hpp"
#include "sodium_scout/json_io.hpp"

namespace sodium_scout {

// Holds the current catalog snapshot. Readers copy the shared_ptr and keep
// using that snapshot for the whole request.
class CatalogHandle {
 public:
  explicit CatalogHandle(std::shared_ptr<const Catalog> initial) : current_(std::move(initial)) {}

  std::shared_ptr<const Catalog> snapshot() const {
    std::lock_guard lock(mu_);
    return current_;
  }

  void swap(std::shared_ptr<const Catalog> next) {
    std::lock_guard lock(mu_);
    current_ = std::move(next);
  }

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const Catalog> current_;
};

struct HostPort {
  std::string host;
  int port = 0;
};

inline HostPort parse_bind_address(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) throw ValidationError("bind address must be host:port, got '" + addr + "'");
  HostPort hp;
  hp.host = addr.substr(0, colon);
  if (hp.host.size() >= 2 && hp.host.front() == '[' && hp.host.back() == ']') hp.host = hp.host.substr(1, hp.host.size() - 2);
  const std::string port = addr.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), hp.port);
  if (ec != std::errc{} || ptr != port.data() + port.size() || hp.port < 0 || hp.port > 65535)
    throw ValidationError("invalid port in bind address '" + addr + "'");
  if (hp.host.empty()) hp.host = "0.0.0.0";
  return hp;
}

class Service {
 public:
  Service(std::shared_ptr<const Catalog> catalog, ScoringConfig config = {})
      : catalog_(std::move(catalog)), config_(config) {
    routes();
  }

  CatalogHandle& catalog() noexcept { return catalog_; }
  httplib::Server& server() noexcept { return server_; }

  // Binds and blocks until stop().
  bool listen(const std::string& host, int port) { return server_.listen(host, port); }
  int bind_to_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }

 private:
  using Handler = std::function<ordered_json(const httplib::Request&, const Catalog&)>;

  static void reply(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(wire::dump(body), "application/json");
  }

  void guarded(const httplib::Request& req, httplib::Response& res, const Handler& fn) {
    const std::shared_ptr<const Catalog> snap = catalog_.snapshot();
    try {
      reply(res, 200, fn(req, *snap));
    } catch (const nlohmann::json::exception& e) {
      reply(res, 400, error_json("malformed", e.what()));
    } catch (const MalformedRequest& e) {
      reply(res, 400, error_json(e.code(), e.what()));
    } catch (const Error& e) {
      reply(res, 422, error_json(e.code(), e.what()));
    } catch (const std::exception& e) {
      reply(res, 500, error_json("internal", e.what()));
    }
  }

  static std::size_t size_param(const httplib::Request& req, const char* key, std::size_t fallback) {
    if (!req.has_param(key)) return fallback;
    const std::string v = req.get_param_value(key);
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      throw MalformedRequest(std::string("query parameter '") + key + "' must be a non-negative integer");
    return out;
  }

  void routes() {
    server_.Get("/health", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(req, res, [](const httplib::Request&, const Catalog& c) {
        ordered_json j;
        j["status"] = "ok";
        j["catalog_version"] = c.version();
        j["built_at"] = format_timestamp(c.built_at());
        j["restaurants"] = c.restaurants().size();
        j["items"] = c.items().size();
        return j;
      });
    });

    server_.Get("/items", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(req, res, [](const httplib::Request& r, const Catalog& c) {
        const std::size_t limit = std::min<std::size_t>(size_param(r, "limit", 50), 1000);
        const std::size_t offset = size_param(r, "offset", 0);
        ordered_json items = ordered_json::array();
        std::size_t index = 0;
        for (const auto& [id, item] : c.items()) {
          if (index >= offset && items.size() < limit) items.push_back(to_json(item));
          ++index;
        }
        ordered_json j;
        j["total"] = c.items().size();
        j["offset"] = offset;
        j["limit"] = limit;
        j["items"] = std::move(items);
        return j;
      });
    });

    server_.Post("/sodium-need", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(req, res, [this](const httplib::Request& r, const Catalog&) {
        const auto body = nlohmann::json::parse(r.body);
        detail::require_object(body, "request");
        const UserProfile profile = profile_from_json(detail::field(body, "request", "profile"));
        const ScenarioInput scenario = scenario_from_json(detail::field(body, "request", "scenario"));
        return to_json(sodium_need(profile, scenario, config_.physio));
      });
    });

    server_.Post("/recommend", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(req, res, [this](const httplib::Request& r, const Catalog& c) {
        return to_json(recommend(request_from_json(nlohmann::json::parse(r.body)), c, config_));
      });
    });
  }

  CatalogHandle catalog_;
  ScoringConfig config_;
  httplib::Server server_;
};

}  // namespace sodium_scout
