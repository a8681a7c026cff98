/*
 * Copyright 2026 The authlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "authlab/scenario/simulation.h"

#include <deque>
#include <memory>

#include "authlab/attack/fault_injector.h"
#include "authlab/core/rng.h"
#include "authlab/core/sim_clock.h"
#include "authlab/host/host.h"
#include "authlab/linklayer/link_controller.h"

namespace authlab::scenario {
namespace {

using linklayer::LinkController;
using linklayer::Side;

// Quiet time inserted between script steps.
constexpr SimTime kStepGapMicros = 1'000'000;

class World;

struct Node {
  std::string name;
  DeviceAddress address;
  DeviceRole role = DeviceRole::kHost;
  std::string profile;
  KeyStore store;
  std::unique_ptr<host::HostPolicy> policy;
  std::unique_ptr<host::Host> host;
  attack::FaultInjector injector;
  std::vector<trace::TracePacket> capture;
  std::map<uint16_t, DeviceAddress> handle_peers;
};

// Connects a victim host to one controller of one link.
class Endpoint : public linklayer::HostPort {
 public:
  Endpoint(World& world, Node& node) : world_(world), node_(node) {}

  void Bind(LinkController* controller, Side side) {
    controller_ = controller;
    side_ = side;
  }
  void Submit(hci::Command command) { controller_->Submit(side_, std::move(command)); }

  void OnEvent(const hci::Event& event) override;
  std::optional<LinkKey> LongTermKey(const DeviceAddress& peer) override {
    return node_.host->LongTermKey(peer);
  }

 private:
  World& world_;
  Node& node_;
  LinkController* controller_ = nullptr;
  Side side_ = Side::kInitiator;
};

// The attacker's side of one link segment. Answers with the key it holds
// for the victim on the other end of the segment.
class MitmEndpoint : public linklayer::HostPort {
 public:
  MitmEndpoint(World& world, LinkKey key) : world_(world), key_(key) {}

  void Bind(LinkController* controller, Side side) {
    controller_ = controller;
    side_ = side;
  }
  void Submit(hci::Command command) { controller_->Submit(side_, std::move(command)); }
  const LinkKey& key() const { return key_; }

  void OnEvent(const hci::Event& event) override;
  std::optional<LinkKey> LongTermKey(const DeviceAddress&) override { return key_; }

 private:
  World& world_;
  LinkKey key_;
  LinkController* controller_ = nullptr;
  Side side_ = Side::kInitiator;
  bool disconnected_ = false;
};

class World {
 public:
  World(const ScenarioConfig& config, const RunOptions& options);

  ScenarioResult Run();

  void OnHostEvent(Node& node, Endpoint& endpoint, const hci::Event& event);
  void MarkEncrypted(uint16_t handle) { encrypted_[handle] = true; }

 private:
  struct PendingRepair {
    Node* node;
    host::RepairRequest request;
  };
  struct LinkEntry {
    LinkController* controller;
    size_t step;
    attack::Route route;
  };

  Node& NodeNamed(const std::string& name);
  Node* NodeAt(const DeviceAddress& address);
  void Capture(Node& node, trace::Direction direction, hci::Packet packet);
  void Emit(Node& node, Endpoint* endpoint, host::HostOutput output);

  void InstallInitialPairing(const PairingConfig& pairing);
  void Install(Node& node, const LinkKeyRecord& record);
  void Pair(Node& node, const DeviceAddress& peer, Transport transport,
            PairingTrigger trigger);
  LinkKey FreshKey(const std::optional<LinkKey>& avoid = std::nullopt);

  void Connect(const std::string& initiator, const std::string& responder, Transport transport);
  LinkController& NewLink(uint16_t handle, const DeviceAddress& initiator,
                          const DeviceAddress& responder, Transport transport,
                          linklayer::HostPort& init_port, linklayer::HostPort& resp_port,
                          attack::Route route);
  void RunStep(const Step& step);
  void Settle();

  const ScenarioConfig& config_;
  Scheduler scheduler_;
  ScenarioRng rng_;
  EventBus bus_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::unique_ptr<attack::MitmNode> mitm_;
  std::string dut_profile_;

  std::vector<std::unique_ptr<Endpoint>> endpoints_;
  std::vector<std::unique_ptr<MitmEndpoint>> mitm_endpoints_;
  std::vector<std::unique_ptr<LinkController>> controllers_;
  std::vector<LinkEntry> links_;
  std::map<uint16_t, bool> encrypted_;
  uint16_t next_handle_ = 1;

  size_t current_step_ = 0;
  std::optional<Step> last_connect_;
  std::vector<PendingRepair> automatic_;
  std::deque<PendingRepair> awaiting_consent_;
  size_t consents_executed_ = 0;
};

void Endpoint::OnEvent(const hci::Event& event) { world_.OnHostEvent(node_, *this, event); }

void MitmEndpoint::OnEvent(const hci::Event& event) {
  if (const auto* e = std::get_if<hci::LinkKeyRequest>(&event)) {
    Submit(hci::LinkKeyRequestReply{e->peer, key_});
    return;
  }
  std::optional<uint16_t> failed;
  if (const auto* e = std::get_if<hci::AuthenticationComplete>(&event)) {
    if (e->status != ErrorCode::kSuccess) failed = e->handle;
  } else if (const auto* e = std::get_if<hci::EncryptionChange>(&event)) {
    if (e->enabled) world_.MarkEncrypted(e->handle);
    else failed = e->handle;
  } else if (std::holds_alternative<hci::DisconnectionComplete>(event)) {
    disconnected_ = true;
  }
  if (failed && side_ == Side::kInitiator && !disconnected_) {
    disconnected_ = true;
    Submit(hci::Disconnect{*failed, ErrorCode::kAuthenticationFailure});
  }
}

World::World(const ScenarioConfig& config, const RunOptions& options)
    : config_(config), rng_(options.seed_override.value_or(config.seed.value_or(0))) {
  const auto registry = ScenarioProfiles(config);
  for (const auto& device : config.devices) {
    if (device.role == DeviceRole::kMitm) {
      mitm_ = std::make_unique<attack::MitmNode>(device.address);
      continue;
    }
    auto node = std::make_unique<Node>();
    node->name = device.name;
    node->address = device.address;
    node->role = device.role;
    profiles::StackProfile profile = registry.Get(EffectiveProfile(device));
    if (device.name == config.dut && options.dut_profile) profile = *options.dut_profile;
    if (device.option) profile.option = *device.option;
    profiles::Validate(profile);
    node->profile = profile.name;
    if (device.name == config.dut) dut_profile_ = profile.name;
    node->policy = profiles::MakePolicy(profile);
    node->store.AttachAudit(&bus_, &scheduler_.clock(), device.address);
    node->host = std::make_unique<host::Host>(device.address, node->store, *node->policy);
    nodes_.push_back(std::move(node));
  }
  for (const auto& pairing : config.pairings) InstallInitialPairing(pairing);
}

Node& World::NodeNamed(const std::string& name) {
  for (auto& n : nodes_) {
    if (n->name == name) return *n;
  }
  throw std::logic_error("no host device named '" + name + "'");
}

Node* World::NodeAt(const DeviceAddress& address) {
  for (auto& n : nodes_) {
    if (n->address == address) return n.get();
  }
  return nullptr;
}

LinkKey World::FreshKey(const std::optional<LinkKey>& avoid) {
  LinkKey key = rng_.NextKey();
  while (avoid && key == *avoid) key = rng_.NextKey();
  return key;
}

void World::InstallInitialPairing(const PairingConfig& p) {
  Node& a = NodeNamed(p.a);
  Node& b = NodeNamed(p.b);
  if (!p.via_mitm) {
    LinkKey key = p.key ? *p.key : FreshKey();
    a.store.Put({b.address, key, p.key_type, p.bonded, p.transport});
    b.store.Put({a.address, key, p.key_type, p.bonded, p.transport});
    return;
  }
  LinkKey k_am = p.key ? *p.key : FreshKey();
  LinkKey k_mb = p.key_b ? *p.key_b : FreshKey(k_am);
  a.store.Put({b.address, k_am, p.key_type, p.bonded, p.transport});
  b.store.Put({a.address, k_mb, p.key_type, p.bonded, p.transport});
  mitm_->Intercept({a.address, k_am, p.key_type, p.bonded, p.transport},
                   {b.address, k_mb, p.key_type, p.bonded, p.transport});
}

void World::Capture(Node& node, trace::Direction direction, hci::Packet packet) {
  node.capture.push_back({scheduler_.now(), direction, std::move(packet)});
}

// BR/EDR keys arrive at the host as a Link Key Notification; LE keys are
// handed to the host directly.
void World::Install(Node& node, const LinkKeyRecord& record) {
  if (record.transport == Transport::kBle) {
    node.host->StorePairing(record);
    return;
  }
  node.host->ExpectPairing(record.peer, record.bonded);
  hci::Event event = hci::LinkKeyNotification{record.peer, record.key, record.key_type};
  Capture(node, trace::Direction::kReceived, event);
  node.host->HandleEvent(event);
}

void World::Pair(Node& node, const DeviceAddress& peer_address, Transport transport,
                 PairingTrigger trigger) {
  Node* peer = NodeAt(peer_address);
  if (peer == nullptr) return;
  const PairingConfig* original = config_.FindPairing(node.name, peer->name);
  bool bonded = original == nullptr || original->bonded;
  // Unprompted re-pairing falls back to Just Works.
  KeyType type = trigger == PairingTrigger::kAutomatic || original == nullptr
                     ? KeyType::kUnauthenticated
                     : original->key_type;

  bus_.Publish(scheduler_.now(), node.address, PairingInitiated{peer_address, transport, trigger});
  bool via_mitm = mitm_ && mitm_->present();
  if (via_mitm) {
    // The attacker answers both pairing attempts itself.
    type = KeyType::kUnauthenticated;
    LinkKey k_am = FreshKey();
    LinkKey k_mb = FreshKey(k_am);
    mitm_->Intercept({node.address, k_am, type, bonded, transport},
                     {peer->address, k_mb, type, bonded, transport});
    Install(node, {peer->address, k_am, type, bonded, transport});
    Install(*peer, {node.address, k_mb, type, bonded, transport});
  } else {
    LinkKey key = FreshKey();
    Install(node, {peer->address, key, type, bonded, transport});
    Install(*peer, {node.address, key, type, bonded, transport});
  }
  bus_.Publish(scheduler_.now(), node.address,
               PairingCompleted{peer_address, transport, type, bonded, via_mitm});
}

void World::OnHostEvent(Node& node, Endpoint& endpoint, const hci::Event& event) {
  Capture(node, trace::Direction::kReceived, event);
  if (const auto* e = std::get_if<hci::EncryptionChange>(&event); e != nullptr && e->enabled) {
    MarkEncrypted(e->handle);
  }
  Emit(node, &endpoint, node.host->HandleEvent(event));
}

void World::Emit(Node& node, Endpoint* endpoint, host::HostOutput output) {
  for (auto& surface : output.surface) {
    bus_.Publish(scheduler_.now(), node.address, std::move(surface));
  }
  attack::InjectionContext context{current_step_, [&node](uint16_t handle) {
                                     std::optional<DeviceAddress> peer;
                                     if (auto it = node.handle_peers.find(handle);
                                         it != node.handle_peers.end()) {
                                       peer = it->second;
                                     }
                                     return peer;
                                   }};
  for (auto& command : output.commands) {
    attack::InjectionResult result = node.injector.Apply(command, context);
    if (result.audit) bus_.Publish(scheduler_.now(), node.address, *result.audit);
    Capture(node, trace::Direction::kSent, result.command);
    if (endpoint != nullptr) endpoint->Submit(std::move(result.command));
  }
  if (output.repair) {
    PendingRepair pending{&node, *output.repair};
    if (output.repair->mode == host::RepairMode::kAutomatic) {
      automatic_.push_back(pending);
    } else if (output.repair->mode == host::RepairMode::kAskUser) {
      awaiting_consent_.push_back(pending);
    }
  }
}

LinkController& World::NewLink(uint16_t handle, const DeviceAddress& initiator,
                               const DeviceAddress& responder, Transport transport,
                               linklayer::HostPort& init_port, linklayer::HostPort& resp_port,
                               attack::Route route) {
  controllers_.push_back(std::make_unique<LinkController>(
      linklayer::Connection(handle, initiator, responder, transport), init_port, resp_port,
      scheduler_, rng_));
  links_.push_back({controllers_.back().get(), current_step_, route});
  encrypted_[handle] = false;
  return *controllers_.back();
}

void World::Connect(const std::string& initiator_name, const std::string& responder_name,
                    Transport transport) {
  Node& init = NodeNamed(initiator_name);
  Node& resp = NodeNamed(responder_name);
  for (Node* n : {&init, &resp}) {
    if (!n->policy->SupportsTransport(transport)) {
      throw UnsupportedError("profile '" + n->profile + "' of device '" + n->name +
                             "' does not support " + std::string(ToString(transport)));
    }
  }
  attack::Route route =
      attack::PlanRoute(mitm_.get(), {init.address, resp.address, transport});

  auto attach_victim = [&](Node& node, uint16_t handle, const DeviceAddress& peer,
                           bool initiator) -> Endpoint& {
    endpoints_.push_back(std::make_unique<Endpoint>(*this, node));
    node.host->OnConnected(handle, peer, transport, initiator);
    node.handle_peers[handle] = peer;
    return *endpoints_.back();
  };
  auto attach_mitm = [&](LinkKey key) -> MitmEndpoint& {
    mitm_endpoints_.push_back(std::make_unique<MitmEndpoint>(*this, key));
    return *mitm_endpoints_.back();
  };
  auto start_victim = [&](Node& node, Endpoint& endpoint, uint16_t handle) {
    Emit(node, &endpoint, node.host->StartSecurity(handle));
  };

  if (route == attack::Route::kDirect) {
    uint16_t h = next_handle_++;
    Endpoint& ei = attach_victim(init, h, resp.address, true);
    Endpoint& er = attach_victim(resp, h, init.address, false);
    LinkController& link = NewLink(h, init.address, resp.address, transport, ei, er, route);
    ei.Bind(&link, Side::kInitiator);
    er.Bind(&link, Side::kResponder);
    start_victim(init, ei, h);
    return;
  }

  // The attacker poses as the responder towards the initiator.
  uint16_t h1 = next_handle_++;
  auto key_for = [&](const DeviceAddress& victim) {
    auto key = mitm_->KeyFor(victim, transport);
    return key ? *key : FreshKey();
  };
  Endpoint& ei = attach_victim(init, h1, resp.address, true);
  MitmEndpoint& m1 = attach_mitm(key_for(init.address));
  LinkController& seg1 = NewLink(h1, init.address, resp.address, transport, ei, m1, route);
  ei.Bind(&seg1, Side::kInitiator);
  m1.Bind(&seg1, Side::kResponder);
  start_victim(init, ei, h1);
  if (route != attack::Route::kRelay) return;

  // Second segment: the attacker poses as the initiator towards the responder.
  uint16_t h2 = next_handle_++;
  MitmEndpoint& m2 = attach_mitm(key_for(resp.address));
  Endpoint& er = attach_victim(resp, h2, init.address, false);
  LinkController& seg2 = NewLink(h2, init.address, resp.address, transport, m2, er, route);
  m2.Bind(&seg2, Side::kInitiator);
  er.Bind(&seg2, Side::kResponder);
  if (transport == Transport::kBtClassic) {
    m2.Submit(hci::AuthenticationRequested{h2});
  } else {
    m2.Submit(hci::LeEnableEncryption{h2, 0, 0, m2.key()});
  }
}

void World::Settle() {
  scheduler_.RunUntilIdle();
  while (!automatic_.empty()) {
    auto pending = std::move(automatic_);
    automatic_.clear();
    for (const auto& p : pending) {
      Pair(*p.node, p.request.peer, p.request.transport, PairingTrigger::kAutomatic);
    }
    scheduler_.RunUntilIdle();
  }
}

void World::RunStep(const Step& step) {
  switch (step.kind) {
    case StepKind::kConnect: {
      Transport transport = Transport::kBtClassic;
      if (step.transport) {
        transport = *step.transport;
      } else if (const auto* p = config_.FindPairing(step.device, step.peer)) {
        transport = p->transport;
      }
      Step resolved = step;
      resolved.transport = transport;
      last_connect_ = resolved;
      Connect(step.device, step.peer, transport);
      break;
    }
    case StepKind::kReconnect:
      if (last_connect_) Connect(last_connect_->device, last_connect_->peer, *last_connect_->transport);
      break;
    case StepKind::kInjectFault: {
      Node& node = NodeNamed(step.device);
      attack::FaultRule rule;
      rule.target = step.fault.target;
      if (step.fault.peer) rule.match_peer = NodeNamed(*step.fault.peer).address;
      rule.replacement = step.fault.key;
      rule.window = step.fault.window.value_or(attack::StepWindow{current_step_});
      node.injector.AddRule(rule);
      break;
    }
    case StepKind::kMitmPresent:
      if (mitm_) mitm_->set_present(step.flag);
      break;
    case StepKind::kUserReset: {
      Node& node = NodeNamed(step.device);
      Node& peer = NodeNamed(step.peer);
      Transport transport = Transport::kBtClassic;
      if (const auto* p = config_.FindPairing(step.device, step.peer)) transport = p->transport;
      node.store.Delete(peer.address, transport, DeletionCause::kUserReset);
      break;
    }
    case StepKind::kUserConsent: {
      ++consents_executed_;
      if (awaiting_consent_.empty()) break;
      PendingRepair pending = awaiting_consent_.front();
      awaiting_consent_.pop_front();
      bus_.Publish(scheduler_.now(), pending.node->address,
                   ConsentResolved{pending.request.peer, step.flag});
      if (step.flag) {
        Pair(*pending.node, pending.request.peer, pending.request.transport,
             PairingTrigger::kUserConsent);
      }
      break;
    }
  }
}

ScenarioResult World::Run() {
  ScenarioResult result;
  result.scenario_id = config_.id;
  result.dut = config_.dut;
  result.dut_profile = dut_profile_;
  for (const auto& n : nodes_) result.stores_before[n->name] = n->store.Records();

  for (size_t i = 0; i < config_.script.size(); ++i) {
    current_step_ = i;
    RunStep(config_.script[i]);
    Settle();
    scheduler_.Idle(kStepGapMicros);
  }

  for (auto& n : nodes_) {
    result.captures[n->name] = std::move(n->capture);
    result.stores_after[n->name] = n->store.Records();
  }
  result.events = bus_.events();
  if (mitm_) result.mitm_store = mitm_->store().Records();
  for (const auto& entry : links_) {
    const auto& conn = entry.controller->connection();
    result.links.push_back({conn.handle(), conn.initiator(), conn.responder(), conn.transport(),
                            entry.step, entry.route, conn.state(), encrypted_[conn.handle()],
                            conn.detach_reason()});
    for (const auto& r : entry.controller->rejected()) result.rejected_commands.push_back(r);
  }
  result.consents_executed = consents_executed_;
  return result;
}

}  // namespace

profiles::ProfileRegistry ScenarioProfiles(const ScenarioConfig& config) {
  profiles::ProfileRegistry registry = profiles::BuiltinProfiles();
  for (const auto& p : config.profiles) registry.Upsert(p);
  return registry;
}

ScenarioResult Simulate(const ScenarioConfig& config, const RunOptions& options) {
  World world(config, options);
  return world.Run();
}

}  // namespace authlab::scenario
