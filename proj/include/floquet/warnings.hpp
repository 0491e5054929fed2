#pragma once

#include <string>
#include <vector>

namespace floquet {

// Collector for regime-validity warnings. Closed-form results are still
// returned outside their derivation regime (the reference curves are plotted
// across regime boundaries); callers that care pass a log and print it.
class WarningLog {
public:
    void add(std::string message) { messages_.push_back(std::move(message)); }
    const std::vector<std::string>& messages() const { return messages_; }
    bool empty() const { return messages_.empty(); }

private:
    std::vector<std::string> messages_;
};

inline void warn(WarningLog* log, std::string message) {
    if (log != nullptr) log->add(std::move(message));
}

}  // namespace floquet
