#include "spearsift/forge.hpp"

#include <algorithm>

#include "spearsift/corpus.hpp"
#include "spearsift/errors.hpp"

namespace spearsift {

namespace {

const char* const kSenderHeaders[] = {"from", "reply-to", "return-path", "sender"};

bool is_sender_header(const std::string& name) {
    for (const char* h : kSenderHeaders)
        if (name == h) return true;
    return false;
}

RawEmail rewrite_sender_headers(const RawEmail& donor, const std::string& target,
                                AttackKind kind) {
    RawEmail copy = donor;
    for (auto& [name, value] : copy.headers)
        if (is_sender_header(name)) value = target;
    copy.claimed_sender = target;
    copy.source_id = donor.source_id + "!" + std::string(attack_kind_name(kind));
    return copy;
}

}  // namespace

std::string domain_of(const std::string& address) {
    std::size_t at = address.find('@');
    return at == std::string::npos ? std::string() : address.substr(at + 1);
}

std::optional<std::string> recipient_of(const RawEmail& email) {
    const std::string* to = email.find_header("to");
    if (!to) return std::nullopt;
    std::string_view first(*to);
    std::size_t comma = first.find(',');
    if (comma != std::string_view::npos) first = first.substr(0, comma);
    try {
        return normalize_sender(first);
    } catch (const MissingSender&) {
        return std::nullopt;
    }
}

ForgedEmail forge_blind_spoof(const RawEmail& donor, const std::string& target) {
    if (donor.claimed_sender == target)
        throw SameSender("target equals donor sender: " + target);
    ForgedEmail forged;
    forged.email = rewrite_sender_headers(donor, target, AttackKind::blind_spoofing);
    forged.attack = AttackKind::blind_spoofing;
    forged.impersonated_sender = target;
    forged.donor_source_id = donor.source_id;
    return forged;
}

ForgedEmail forge_known_domain(const RawEmail& donor,
                               const std::vector<std::string>& sender_pool,
                               Rng& rng) {
    const std::string domain = domain_of(donor.claimed_sender);
    std::vector<const std::string*> peers;
    for (const std::string& addr : sender_pool)
        if (addr != donor.claimed_sender && domain_of(addr) == domain)
            peers.push_back(&addr);
    if (peers.empty())
        throw NoDomainPeer("no same-domain peer for " + donor.claimed_sender);

    const std::string& target = *peers[rng.uniform_index(peers.size())];
    ForgedEmail forged;
    forged.email = rewrite_sender_headers(donor, target, AttackKind::known_domain);
    forged.attack = AttackKind::known_domain;
    forged.impersonated_sender = target;
    forged.donor_source_id = donor.source_id;
    return forged;
}

ForgedEmail forge_known_sender(const RawEmail& donor,
                               const std::string& new_recipient) {
    std::optional<std::string> original = recipient_of(donor);
    if (!original)
        throw MissingRecipient("donor has no parseable To field: " + donor.source_id);
    if (*original == new_recipient)
        throw SameRecipient("new recipient equals the original: " + new_recipient);

    ForgedEmail forged;
    forged.email = donor;
    for (auto& [name, value] : forged.email.headers)
        if (name == "to") value = new_recipient;
    forged.email.source_id =
        donor.source_id + "!" + std::string(attack_kind_name(AttackKind::known_sender));
    forged.attack = AttackKind::known_sender;
    forged.impersonated_sender = donor.claimed_sender;
    forged.donor_source_id = donor.source_id;
    return forged;
}

DonorPools collect_pools(const Corpus& training) {
    DonorPools pools;
    for (const RawEmail& email : training.emails) {
        pools.senders.push_back(email.claimed_sender);
        if (auto recipient = recipient_of(email)) pools.recipients.push_back(*recipient);
    }
    auto dedupe = [](std::vector<std::string>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(pools.senders);
    dedupe(pools.recipients);
    return pools;
}

namespace {

// Forges one test email from the donor, or returns nullopt when the donor
// is not eligible for this attack kind.
std::optional<ForgedEmail> try_forge(const RawEmail& donor, const DonorPools& pools,
                                     AttackKind attack, Rng& rng) {
    switch (attack) {
        case AttackKind::blind_spoofing: {
            std::vector<const std::string*> targets;
            for (const std::string& addr : pools.senders)
                if (addr != donor.claimed_sender) targets.push_back(&addr);
            if (targets.empty()) return std::nullopt;
            return forge_blind_spoof(donor, *targets[rng.uniform_index(targets.size())]);
        }
        case AttackKind::known_domain: {
            try {
                return forge_known_domain(donor, pools.senders, rng);
            } catch (const NoDomainPeer&) {
                return std::nullopt;
            }
        }
        case AttackKind::known_sender: {
            // Impersonation is only meaningful against a profiled sender.
            if (!std::binary_search(pools.senders.begin(), pools.senders.end(),
                                    donor.claimed_sender))
                return std::nullopt;
            std::optional<std::string> original = recipient_of(donor);
            if (!original) return std::nullopt;
            std::vector<const std::string*> candidates;
            for (const std::string& addr : pools.recipients)
                if (addr != *original) candidates.push_back(&addr);
            if (candidates.empty()) return std::nullopt;
            return forge_known_sender(donor,
                                      *candidates[rng.uniform_index(candidates.size())]);
        }
    }
    return std::nullopt;
}

}  // namespace

TestSet build_test_set(const Corpus& heldout, const DonorPools& pools,
                       AttackKind attack, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidConfig("test set size must be positive");
    if (heldout.emails.size() < n)
        throw InsufficientCorpus("need " + std::to_string(n) + " benign emails, have " +
                                 std::to_string(heldout.emails.size()));

    Rng rng(seed);
    std::vector<std::size_t> order(heldout.emails.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    TestSet items;
    items.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        LabeledEmail item;
        item.email = heldout.emails[order[i]];
        item.is_spear = false;
        items.push_back(std::move(item));
    }

    // Donors come from the remaining held-out emails first, wrapping into
    // the benign picks only when eligible donors run short.
    std::size_t forged_count = 0;
    for (std::size_t step = 0; step < order.size() && forged_count < n; ++step) {
        std::size_t idx = order[(n + step) % order.size()];
        std::optional<ForgedEmail> forged =
            try_forge(heldout.emails[idx], pools, attack, rng);
        if (!forged) continue;
        LabeledEmail item;
        item.email = std::move(forged->email);
        item.is_spear = true;
        item.attack = attack;
        item.donor_source_id = std::move(forged->donor_source_id);
        items.push_back(std::move(item));
        ++forged_count;
    }
    if (forged_count < n)
        throw InsufficientCorpus("only " + std::to_string(forged_count) + " of " +
                                 std::to_string(n) + " donors were eligible for " +
                                 std::string(attack_kind_name(attack)));

    rng.shuffle(items);
    return items;
}

}  // namespace spearsift
