#include "lexpe/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace lexpe {

namespace {

LogLevel from_env() {
  const char* v = std::getenv("LEXPE_LOG");
  if (!v) return LogLevel::warn;
  const std::string s(v);
  if (s == "error" || s == "0") return LogLevel::error;
  if (s == "info" || s == "2") return LogLevel::info;
  if (s == "debug" || s == "3") return LogLevel::debug;
  return LogLevel::warn;
}

std::atomic<int>& level_slot() {
  static std::atomic<int> level{static_cast<int>(from_env())};
  return level;
}

constexpr const char* kNames[] = {"error", "warning", "info", "debug"};

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(level_slot().load()); }

void set_log_level(LogLevel level) { level_slot().store(static_cast<int>(level)); }

void log_message(LogLevel level, std::string_view message) {
  if (static_cast<int>(level) > level_slot().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "lexpe: " << kNames[static_cast<int>(level)] << ": " << message << '\n';
}

}  // namespace lexpe
