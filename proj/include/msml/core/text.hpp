#pragma once

#include <functional>
#include <string>
#include <vector>

namespace msml {

// Whitespace-splits one line into tokens; '#' cuts the rest of the line.
std::vector<std::string> split_ws(const std::string& line);

// Invokes fn(line_number, tokens) for every line that still has tokens after
// comment stripping. Errors thrown by fn gain the line number unless they
// already carry one.
void for_each_line(
    const std::string& text,
    const std::function<void(int, const std::vector<std::string>&)>& fn);

// Reads a whole file; throws Error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace msml
