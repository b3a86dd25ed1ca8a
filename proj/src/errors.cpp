#include "afc/errors.hpp"

#include <iostream>
#include <mutex>

namespace afc {
namespace {

std::mutex g_mutex;
warning_handler g_handler;

}  // namespace

void set_warning_handler(warning_handler h) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_handler = std::move(h);
}

void warn(const std::string& message) {
  warning_handler h;
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    h = g_handler;
  }
  if (h)
    h(message);
  else
    std::cerr << "warning: " << message << "\n";
}

}  // namespace afc
