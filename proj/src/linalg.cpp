#include "qmur/linalg.hpp"

#include <sstream>

namespace qmur {

DimensionProfile::DimensionProfile(std::initializer_list<std::size_t> factors)
    : DimensionProfile(std::vector<std::size_t>(factors))
{
}

DimensionProfile::DimensionProfile(std::vector<std::size_t> factors) : factors_(std::move(factors))
{
    for (auto f : factors_)
        if (f < 1)
            throw DimensionError("DimensionProfile: factors must be >= 1");
}

std::size_t DimensionProfile::total() const
{
    std::size_t t = 1;
    for (auto f : factors_)
        t *= f;
    return t;
}

std::size_t DimensionProfile::total(std::span<const std::size_t> indices) const
{
    std::size_t t = 1;
    for (auto i : indices)
        t *= factors_.at(i);
    return t;
}

DimensionProfile DimensionProfile::select(std::span<const std::size_t> indices) const
{
    std::vector<std::size_t> out;
    out.reserve(indices.size());
    for (auto i : indices)
        out.push_back(factors_.at(i));
    return DimensionProfile(std::move(out));
}

DimensionProfile DimensionProfile::appended(std::size_t dim) const
{
    auto f = factors_;
    f.push_back(dim);
    return DimensionProfile(std::move(f));
}

DimensionProfile DimensionProfile::concatenated(const DimensionProfile& other) const
{
    auto f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return DimensionProfile(std::move(f));
}

void DimensionProfile::require_total(std::size_t dim) const
{
    if (total() != dim)
        throw DimensionError("profile " + to_string() + " does not match dimension " + std::to_string(dim));
}

std::string DimensionProfile::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        os << (i ? "x" : "") << factors_[i];
    return os.str();
}

DimensionProfile DimensionProfile::parse(const std::string& text)
{
    std::vector<std::size_t> f;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto next = text.find('x', pos);
        const auto token = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw ParameterError("malformed dimension profile '" + text + "'");
        const auto value = std::stoul(token);
        if (value < 1)
            throw ParameterError("dimension factors must be >= 1 in '" + text + "'");
        f.push_back(value);
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return DimensionProfile(std::move(f));
}

namespace detail {

std::vector<std::vector<std::size_t>> index_digits(const DimensionProfile& profile)
{
    const std::size_t n = profile.total();
    const std::size_t k = profile.size();
    std::vector<std::vector<std::size_t>> digits(n, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (std::size_t s = k; s-- > 0;) {
            digits[i][s] = rest % profile[s];
            rest /= profile[s];
        }
    }
    return digits;
}

std::vector<std::size_t> normalized_subset(std::span<const std::size_t> keep, std::size_t n)
{
    std::vector<std::size_t> out(keep.begin(), keep.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw DimensionError("subsystem index set contains duplicates");
    if (!out.empty() && out.back() >= n)
        throw DimensionError("subsystem index " + std::to_string(out.back()) + " out of range");
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> split_indices(const DimensionProfile& profile,
                                                               std::span<const std::size_t> keep)
{
    std::vector<bool> kept(profile.size(), false);
    for (auto k : keep)
        kept[k] = true;
    const auto digits = index_digits(profile);
    std::vector<std::pair<std::size_t, std::size_t>> out(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        std::size_t a = 0, b = 0;
        for (std::size_t s = 0; s < profile.size(); ++s) {
            if (kept[s])
                a = a * profile[s] + digits[i][s];
            else
                b = b * profile[s] + digits[i][s];
        }
        out[i] = {a, b};
    }
    return out;
}

} // namespace detail

} // namespace qmur
