#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spearsift {

// One parsed message. Header names are lowercased, duplicates are kept in
// arrival order, and the body is decoded best-effort (undecodable bytes are
// replaced with '?'). Immutable by convention once constructed.
struct RawEmail {
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
    std::string source_id;
    std::string claimed_sender;

    // First occurrence of a header, or nullptr. `name` must be lowercase.
    const std::string* find_header(std::string_view name) const;
};

enum class LabelKind { benign, spear };

enum class AttackKind { blind_spoofing, known_domain, known_sender };

inline constexpr std::array<AttackKind, 3> kAllAttackKinds = {
    AttackKind::blind_spoofing,
    AttackKind::known_domain,
    AttackKind::known_sender,
};

std::string_view attack_kind_name(AttackKind kind);
AttackKind attack_kind_from_name(std::string_view name);

// A set of emails sharing one label. attack_kind is present exactly when
// label_kind is spear.
struct Corpus {
    std::vector<RawEmail> emails;
    LabelKind label_kind = LabelKind::benign;
    std::optional<AttackKind> attack_kind;
};

}  // namespace spearsift
