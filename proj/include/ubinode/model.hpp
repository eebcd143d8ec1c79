#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ubinode/errors.hpp"
#include "ubinode/types.hpp"

namespace ubinode {

class FeatureCatalog;
using CatalogPtr = std::shared_ptr<const FeatureCatalog>;

// The ordered universe of permission/restriction features. One catalog is
// shared by every node of a scenario; feature indices are stable for the
// life of a run.
class FeatureCatalog {
public:
    static CatalogPtr build(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name_at(std::size_t index) const { return names_.at(index); }
    std::optional<std::size_t> index_of(std::string_view name) const noexcept;
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    explicit FeatureCatalog(std::vector<std::string> names);

    std::vector<std::string> names_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

// Binary vector of catalog length. Bit k is 1 iff feature k is set.
class FeatureVector {
public:
    static FeatureVector zeros(CatalogPtr catalog);
    static FeatureVector from_bits(CatalogPtr catalog, std::vector<std::uint8_t> bits);

    std::size_t size() const noexcept { return bits_.size(); }
    bool test(std::size_t index) const { return bits_.at(index) != 0; }
    void set(std::size_t index, bool value = true) { bits_.at(index) = value ? 1 : 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    const CatalogPtr& catalog() const noexcept { return catalog_; }

    // Positional "0"/"1" string, character k = bit k.
    std::string encode() const;
    static FeatureVector decode(std::string_view text, CatalogPtr catalog);

    friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
        return a.bits_ == b.bits_;
    }

private:
    FeatureVector(CatalogPtr catalog, std::vector<std::uint8_t> bits);

    CatalogPtr catalog_;
    std::vector<std::uint8_t> bits_;
};

// Authentication outcome for one node: every catalog feature is either
// permitted or restricted, never both, never neither.
struct AuthGrant {
    NodeId node;
    std::set<std::string> permitted;
    std::set<std::string> restricted;
};

// Normal profile V(0), derived from the grant at window 0 and immutable
// for the rest of the run.
struct NodeProfile {
    NodeId node;
    FeatureVector vector;
    WindowIndex built_at = 0;
};

// Profile bit k = 1 iff feature k is permitted. Throws GrantError when the
// grant does not partition the catalog.
NodeProfile build_profile(const AuthGrant& grant, const CatalogPtr& catalog);

}  // namespace ubinode
