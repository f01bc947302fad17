#include "core/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace ontograft {

std::string_view source_of(std::string_view id) {
    auto pos = id.find(':');
    if (pos == std::string_view::npos || pos == 0) return {};
    return id.substr(0, pos);
}

bool is_valid_concept_id(std::string_view id) {
    auto pos = id.find(':');
    return pos != std::string_view::npos && pos >= 1 && pos + 1 < id.size();
}

std::string trim(std::string_view text) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    std::size_t b = 0, e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    return std::string(text.substr(b, e - b));
}

std::string normalize_relation(std::string_view tag) {
    std::string out = trim(tag);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool NodeTable::contains(const ConceptId& id) const {
    return std::any_of(records.begin(), records.end(),
                       [&](const NodeRecord& r) { return r.id == id; });
}

bool NodeTable::is_obsolete(const ConceptId& id) const {
    for (const auto& r : records)
        if (r.id == id) return r.obsolete;
    return false;
}

std::set<ConceptId> NodeTable::current_ids() const {
    std::set<ConceptId> out;
    for (const auto& r : records)
        if (!r.obsolete) out.insert(r.id);
    return out;
}

std::set<ConceptId> NodeTable::obsolete_ids() const {
    std::set<ConceptId> out;
    for (const auto& r : records)
        if (r.obsolete) out.insert(r.id);
    return out;
}

std::set<ConceptId> NodeTable::all_ids() const {
    std::set<ConceptId> out;
    for (const auto& r : records) out.insert(r.id);
    return out;
}

bool is_stable(const MergeSet& merges) {
    std::unordered_set<std::string> sources, targets;
    for (const auto& m : merges) {
        if (!sources.insert(m.source).second) return false;  // source appears twice
        targets.insert(m.target);
    }
    for (const auto& m : merges) {
        if (targets.count(m.source)) return false;  // source of one, target of another
        if (sources.count(m.target)) return false;
    }
    return true;
}

std::optional<std::size_t> AlignmentConfig::priority_of(std::string_view source) const {
    for (std::size_t i = 0; i < sources.size(); ++i)
        if (sources[i] == source) return i;
    return std::nullopt;
}

bool AlignmentConfig::relation_in_group(std::string_view relation, std::size_t group_index) const {
    if (group_index >= groups.size()) return false;
    const auto& rels = groups[group_index].relations;
    return std::find(rels.begin(), rels.end(), relation) != rels.end();
}

namespace {
template <typename Set, typename GetSource, typename GetTarget>
std::set<ConceptId> sig_impl(const Set& items, SigSide side, GetSource src, GetTarget tgt) {
    std::set<ConceptId> out;
    for (const auto& item : items) {
        if (side == SigSide::Source || side == SigSide::Both) out.insert(src(item));
        if (side == SigSide::Target || side == SigSide::Both) out.insert(tgt(item));
    }
    return out;
}
}  // namespace

std::set<ConceptId> sig(const MappingSet& items, SigSide side) {
    return sig_impl(items, side, [](const Mapping& m) { return m.source; },
                    [](const Mapping& m) { return m.target; });
}

std::set<ConceptId> sig(const MergeSet& items, SigSide side) {
    return sig_impl(items, side, [](const Merge& m) { return m.source; },
                    [](const Merge& m) { return m.target; });
}

std::set<ConceptId> sig(const HierarchyEdgeSet& items, SigSide side) {
    return sig_impl(items, side, [](const HierarchyEdge& h) { return h.child; },
                    [](const HierarchyEdge& h) { return h.parent; });
}

std::set<ConceptId> sig(const Path& path) {
    return std::set<ConceptId>(path.begin(), path.end());
}

std::set<ConceptId> get_concepts(const NodeTable& nodes, std::string_view source) {
    std::set<ConceptId> out;
    for (const auto& r : nodes.records)
        if (source_of(r.id) == source) out.insert(r.id);
    return out;
}

std::set<ConceptId> get_concepts(const std::set<ConceptId>& ids, std::string_view source) {
    std::set<ConceptId> out;
    for (const auto& id : ids)
        if (source_of(id) == source) out.insert(id);
    return out;
}

}  // namespace ontograft
