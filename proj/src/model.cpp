#include "ubinode/model.hpp"

#include <utility>

namespace ubinode {

const char* to_string(Label label) noexcept {
    return label == Label::Malicious ? "malicious" : "benign";
}

const char* to_string(Verdict verdict) noexcept {
    return verdict == Verdict::Anomaly ? "anomaly" : "normal";
}

FeatureCatalog::FeatureCatalog(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        index_.emplace(names_[i], i);
    }
}

CatalogPtr FeatureCatalog::build(std::vector<std::string> names) {
    if (names.empty()) {
        throw CatalogError("catalog needs at least one feature");
    }
    std::set<std::string_view> seen;
    for (const auto& name : names) {
        if (name.empty()) {
            throw CatalogError("catalog feature name must be non-empty");
        }
        if (!seen.insert(name).second) {
            throw CatalogError("duplicate catalog feature '" + name + "'");
        }
    }
    return CatalogPtr(new FeatureCatalog(std::move(names)));
}

std::optional<std::size_t> FeatureCatalog::index_of(std::string_view name) const noexcept {
    auto it = index_.find(name);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

FeatureVector::FeatureVector(CatalogPtr catalog, std::vector<std::uint8_t> bits)
    : catalog_(std::move(catalog)), bits_(std::move(bits)) {}

FeatureVector FeatureVector::zeros(CatalogPtr catalog) {
    std::vector<std::uint8_t> bits(catalog->size(), 0);
    return FeatureVector(std::move(catalog), std::move(bits));
}

FeatureVector FeatureVector::from_bits(CatalogPtr catalog, std::vector<std::uint8_t> bits) {
    if (bits.size() != catalog->size()) {
        throw VectorError("vector length " + std::to_string(bits.size()) +
                          " does not match catalog size " + std::to_string(catalog->size()));
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw VectorError("bit " + std::to_string(i) + " is not 0 or 1");
        }
    }
    return FeatureVector(std::move(catalog), std::move(bits));
}

std::string FeatureVector::encode() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto bit : bits_) {
        out.push_back(bit ? '1' : '0');
    }
    return out;
}

FeatureVector FeatureVector::decode(std::string_view text, CatalogPtr catalog) {
    if (text.size() != catalog->size()) {
        throw VectorError("bitstring length " + std::to_string(text.size()) +
                          " does not match catalog size " + std::to_string(catalog->size()));
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') {
            throw VectorError(std::string("non-binary character '") + c + "' at position " +
                              std::to_string(i));
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return FeatureVector(std::move(catalog), std::move(bits));
}

NodeProfile build_profile(const AuthGrant& grant, const CatalogPtr& catalog) {
    for (const auto* side : {&grant.permitted, &grant.restricted}) {
        for (const auto& name : *side) {
            if (!catalog->index_of(name)) {
                throw GrantError("grant for '" + grant.node + "' names unknown feature '" +
                                 name + "'");
            }
        }
    }
    auto vector = FeatureVector::zeros(catalog);
    for (std::size_t i = 0; i < catalog->size(); ++i) {
        const auto& name = catalog->name_at(i);
        const bool permitted = grant.permitted.count(name) > 0;
        const bool restricted = grant.restricted.count(name) > 0;
        if (permitted && restricted) {
            throw GrantError("grant for '" + grant.node + "' lists feature '" + name +
                             "' as both permitted and restricted");
        }
        if (!permitted && !restricted) {
            throw GrantError("grant for '" + grant.node + "' leaves feature '" + name +
                             "' unclassified");
        }
        vector.set(i, permitted);
    }
    return NodeProfile{grant.node, std::move(vector), 0};
}

}  // namespace ubinode
