#include "anm/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace anm::text {

std::string_view trim(std::string_view s) noexcept
{
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

namespace {
template <typename T>
std::optional<T> parse_number(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return std::nullopt;
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}
} // namespace

std::optional<double> parse_double(std::string_view s)
{
    // from_chars does not accept "inf"/"nan" spelled with a sign prefix
    // consistently across libraries; treat them uniformly here.
    const auto t = trim(s);
    if (t == "nan" || t == "NaN" || t == "-nan")
        return std::nan("");
    if (t == "inf" || t == "+inf")
        return HUGE_VAL;
    if (t == "-inf")
        return -HUGE_VAL;
    return parse_number<double>(t);
}

std::optional<std::int64_t> parse_int(std::string_view s)
{
    return parse_number<std::int64_t>(s);
}

std::optional<std::uint64_t> parse_u64(std::string_view s)
{
    return parse_number<std::uint64_t>(s);
}

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace anm::text
