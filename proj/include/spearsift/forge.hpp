#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spearsift/email.hpp"
#include "spearsift/rng.hpp"

namespace spearsift {

// A synthesized spear-phishing email plus the provenance needed to audit it.
struct ForgedEmail {
    RawEmail email;
    AttackKind attack = AttackKind::blind_spoofing;
    std::string impersonated_sender;
    std::string donor_source_id;
};

// Domain part of a normalized address (after the '@').
std::string domain_of(const std::string& address);

// Normalized first address in the To field, if any.
std::optional<std::string> recipient_of(const RawEmail& email);

// Rewrites every sender-bearing header (From, Reply-To, Return-Path,
// Sender) to `target`; everything else, body included, is untouched.
ForgedEmail forge_blind_spoof(const RawEmail& donor, const std::string& target);

// Like blind spoofing, but the impersonated sender is drawn at random from
// the pool addresses sharing the donor's domain.
ForgedEmail forge_known_domain(const RawEmail& donor,
                               const std::vector<std::string>& sender_pool,
                               Rng& rng);

// Reuses a genuine email of the impersonated sender, redirecting it: every
// To header is rewritten to new_recipient, sender headers stay untouched.
ForgedEmail forge_known_sender(const RawEmail& donor,
                               const std::string& new_recipient);

// One test item: an email labeled benign or spear.
struct LabeledEmail {
    RawEmail email;
    bool is_spear = false;
    std::optional<AttackKind> attack;
    std::string donor_source_id;  // empty for benign items
};

using TestSet = std::vector<LabeledEmail>;

// Sender and recipient pools collected from the training split; forged
// impersonations only target senders the classifier has profiles for.
struct DonorPools {
    std::vector<std::string> senders;     // sorted, unique
    std::vector<std::string> recipients;  // sorted, unique
};

DonorPools collect_pools(const Corpus& training);

// Balanced test set: n held-out benign emails plus n forged emails of the
// given attack, shuffled by seed. Donors are drawn from the held-out corpus.
TestSet build_test_set(const Corpus& heldout, const DonorPools& pools,
                       AttackKind attack, std::size_t n, std::uint64_t seed);

}  // namespace spearsift
