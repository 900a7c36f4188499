#include "wbench/log.hpp"

#include <iostream>
#include <mutex>

namespace wbench {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& sink() {
  static LogSink s;
  return s;
}

}  // namespace

LogSink set_warning_sink(LogSink new_sink) {
  std::lock_guard lock(sink_mutex());
  auto previous = std::move(sink());
  sink() = std::move(new_sink);
  return previous;
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) {
    sink()(message);
  } else {
    std::clog << "[wbench] warning: " << message << '\n';
  }
}

}  // namespace wbench
