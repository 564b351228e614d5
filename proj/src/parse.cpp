#include "rzdg/parse.hpp"

#include <charconv>

namespace rzdg {

namespace {

std::uint64_t parse_uint(std::string_view s, const std::string& context) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorKind::invalid_argument, "cannot parse number in " + context);
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

RingSpec parse_ring(const std::string& literal) {
    std::vector<RingSpec> parts;
    for (std::string_view tok : split(literal, 'x')) {
        if (tok.size() < 2 || tok[0] != 'Z')
            throw Error(ErrorKind::invalid_argument,
                        "bad ring literal '" + literal + "' (want Z<n> or Z<n>xZ<m>...)");
        parts.push_back(RingSpec::from_modulus(parse_uint(tok.substr(1), literal)));
    }
    return RingSpec::product(parts);
}

Graph parse_named_graph(const std::string& literal) {
    std::size_t colon = literal.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= literal.size())
        throw Error(ErrorKind::invalid_argument,
                    "bad graph literal '" + literal + "' (want kind:params)");
    std::string kind = literal.substr(0, colon);
    std::string_view params(literal);
    params.remove_prefix(colon + 1);

    std::vector<int> nums;
    for (std::string_view tok : split(params, ','))
        nums.push_back(static_cast<int>(parse_uint(tok, literal)));

    if (kind == "complete" && nums.size() == 1) return complete_graph(nums[0]);
    if (kind == "path" && nums.size() == 1) return path_graph(nums[0]);
    if (kind == "cycle" && nums.size() == 1) return cycle_graph(nums[0]);
    if (kind == "empty" && nums.size() == 1) return empty_graph(nums[0]);
    if (kind == "kbip" && nums.size() == 2) return complete_bipartite(nums[0], nums[1]);
    if (kind == "multi" && nums.size() >= 2) return complete_multipartite(nums);
    throw Error(ErrorKind::invalid_argument, "unknown graph literal '" + literal + "'");
}

} // namespace rzdg
