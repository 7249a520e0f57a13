// Copyright 2026 The eqcom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include "eqcom/commitment.hpp"
#include "eqcom/demo.hpp"
#include "eqcom/error.hpp"
#include "eqcom/simulator.hpp"

namespace eqcom::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Group source flags shared by several subcommands; exactly one may be set.
struct GroupSource {
  bool toy = false;
  unsigned q_bits = 0;
  std::string group_seed;
  std::string params_file;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--toy", toy, "Use the toy group p=23, q=11, g=2");
    cmd->add_option("--q-bits", q_bits, "Generate a safe-prime group with q of this many bits");
    cmd->add_option("--group-seed", group_seed, "Seed for --q-bits generation");
    cmd->add_option("--group-file", params_file, "Group parameters file (gen-params output)");
  }

  bool given() const { return toy || q_bits != 0 || !params_file.empty(); }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool hex = false;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kIo, "cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Group load_group(const GroupSource& src) {
  int count = int{src.toy} + int{src.q_bits != 0} + int{!src.params_file.empty()};
  if (count != 1) {
    throw UsageError("exactly one of --toy, --q-bits, --group-file is required");
  }
  if (src.toy) return Group(fixed_test_params());
  if (!src.params_file.empty()) return Group(decode_params(read_file(src.params_file)));
  if (src.group_seed.empty()) throw UsageError("--q-bits needs --group-seed");
  return Group(generate_params(src.q_bits, as_bytes(src.group_seed)));
}

void require_seed(const std::string& seed) {
  if (seed.empty()) throw UsageError("--seed is required for randomized subcommands");
}

Scalar parse_scalar(const std::string& text, const ScalarField& field) {
  mpz_class v;
  if (text.empty() || v.set_str(text, 0) != 0) {
    fail(Errc::kOutOfRange, "not an integer: '" + text + "'");
  }
  return field.from_integer(v);
}

std::vector<Scalar> parse_scalars(const std::vector<std::string>& texts, const ScalarField& f) {
  std::vector<Scalar> out;
  for (const auto& t : texts) out.push_back(parse_scalar(t, f));
  return out;
}

// "x,r" as decimal or 0x-prefixed integers.
Opening parse_inline_opening(const std::string& text, const ScalarField& field) {
  auto comma = text.find(',');
  if (comma == std::string::npos) fail(Errc::kOutOfRange, "opening must be 'x,r'");
  return Opening{parse_scalar(text.substr(0, comma), field),
                 parse_scalar(text.substr(comma + 1), field)};
}

void emit(const Context& ctx, const std::string& label, const std::string& text, ByteView bytes) {
  if (ctx.hex) {
    ctx.out << to_hex(bytes) << '\n';
  } else {
    ctx.out << label << '=' << text << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_gen_params(const Context& ctx, unsigned q_bits, const std::string& seed,
                   const std::string& out_path) {
  require_seed(seed);
  auto params = generate_params(q_bits, as_bytes(seed));
  Bytes bytes = encode_params(params);
  if (!out_path.empty()) write_file(out_path, bytes);
  if (ctx.hex) {
    ctx.out << to_hex(bytes) << '\n';
  } else {
    ctx.out << "p=" << params.p.get_str() << "\nq=" << params.q.get_str()
            << "\ng=" << params.g.get_str() << '\n';
  }
  return kOk;
}

int cmd_setup(const Context& ctx, const GroupSource& src, bool trapdoor, const std::string& seed,
              const std::string& out_path, const std::string& secret_path) {
  Group group = load_group(src);
  require_seed(seed);
  if (trapdoor && secret_path.empty()) throw UsageError("--trapdoor needs --secret-out");
  if (!trapdoor && !secret_path.empty()) throw UsageError("--secret-out needs --trapdoor");
  std::optional<CommitParams> params;
  if (trapdoor) {
    HashDrbg rng(seed);
    auto [p, td] = setup_trapdoor(group, rng);
    write_file(secret_path, encode_trapdoor(td));
    params = std::move(p);
  } else {
    params = setup_honest(group, as_bytes(seed));
  }
  Bytes bytes = encode_commit_params(*params);
  if (!out_path.empty()) write_file(out_path, bytes);
  emit(ctx, "B", params->base.to_string(), encode_element(params->base));
  return kOk;
}

int cmd_commit(const Context& ctx, const std::string& params_path, const std::string& value,
               const std::string& seed, const std::string& out_path,
               const std::string& opening_path) {
  require_seed(seed);
  auto params = decode_commit_params(read_file(params_path));
  Scalar x = parse_scalar(value, params.group.field());
  HashDrbg rng(seed);
  auto [z, o] = commit(params, x, rng);
  if (!out_path.empty()) write_file(out_path, encode_commitment(z));
  write_file(opening_path, encode_opening(o));
  emit(ctx, "Z", z.value.to_string(), encode_commitment(z));
  return kOk;
}

int cmd_verify(const Context& ctx, const std::string& params_path,
               const std::string& commitment_path, const std::string& opening_path) {
  auto params = decode_commit_params(read_file(params_path));
  auto z = decode_commitment(read_file(commitment_path), params.group);
  auto o = decode_opening(read_file(opening_path), params.group.field());
  bool ok = verify(params, z, o);
  if (ctx.hex) {
    ctx.out << (ok ? "01" : "00") << '\n';
  } else {
    ctx.out << (ok ? "verified" : "invalid opening") << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_equivocate(const Context& ctx, const std::string& params_path,
                   const std::string& trapdoor_path, const std::string& opening_path,
                   const std::string& value, const std::string& out_path) {
  auto params = decode_commit_params(read_file(params_path));
  const auto& field = params.group.field();
  auto td = decode_trapdoor(read_file(trapdoor_path), field);
  if (!trapdoor_matches(params, td)) {
    fail(Errc::kInvalidParams, "trapdoor does not match the commitment parameters");
  }
  auto o = decode_opening(read_file(opening_path), field);
  auto o2 = equivocate(td, o, parse_scalar(value, field));
  write_file(out_path, encode_opening(o2));
  emit(ctx, "r", o2.r.to_string(), encode_scalar(o2.r));
  return kOk;
}

int cmd_extract(const Context& ctx, const std::string& params_path, const std::string& q_text,
                const std::vector<std::string>& opening_files,
                const std::vector<std::string>& inline_openings, const std::string& out_path) {
  std::optional<CommitParams> params;
  std::optional<ScalarField> field;
  if (!params_path.empty()) {
    params = decode_commit_params(read_file(params_path));
    field = params->group.field();
  } else if (!q_text.empty()) {
    mpz_class q;
    if (q.set_str(q_text, 0) != 0) throw UsageError("--q must be an integer");
    field = ScalarField(q);
  } else {
    throw UsageError("extract needs --params or --q");
  }

  std::vector<Opening> openings;
  for (const auto& f : opening_files) openings.push_back(decode_opening(read_file(f), *field));
  for (const auto& t : inline_openings) openings.push_back(parse_inline_opening(t, *field));
  if (openings.size() != 2) throw UsageError("extract needs exactly two openings");

  Scalar b = extract(openings[0], openings[1]);
  if (params && !(pow(params->group.generator(), b) == params->base)) {
    ctx.err << "extracted b does not match B: the openings do not share a commitment\n";
    return kVerificationFailed;
  }
  if (!out_path.empty()) write_file(out_path, encode_trapdoor(Trapdoor{b}));
  emit(ctx, "b", b.to_string(), encode_scalar(b));
  return kOk;
}

struct DemoArgs {
  std::size_t sessions = 1;
  std::vector<std::string> values;
  std::string transport = "loopback";
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string receiver = "honest";
  std::string seed;
  std::string transcript_path;
};

ReceiverMode parse_mode(const std::string& mode) {
  if (mode == "honest") return ReceiverMode::kHonest;
  if (mode == "trapdoor") return ReceiverMode::kTrapdoor;
  throw UsageError("--receiver must be honest or trapdoor");
}

int cmd_demo(const Context& ctx, const GroupSource& src, const DemoArgs& a) {
  GroupSource effective = src;
  if (!effective.given()) effective.toy = true;
  Group group = load_group(effective);
  require_seed(a.seed);
  ReceiverMode mode = parse_mode(a.receiver);
  auto values = parse_scalars(a.values, group.field());
  if (!values.empty() && values.size() != 1 && values.size() != a.sessions) {
    throw UsageError("--value must be given once or once per session");
  }
  auto value_for = [&](SessionId id, const Group& g) {
    if (values.empty()) return g.field().reduce(id.value);
    return values.size() == 1 ? values[0] : values[id.value - 1];
  };

  std::pair<PartyOutcome, PartyOutcome> result;
  if (a.transport == "loopback") {
    auto [r_end, c_end] = make_loopback_pair();
    result = run_demo(*r_end, *c_end, group, mode, a.sessions, value_for, as_bytes(a.seed));
  } else if (a.transport == "socket") {
    SocketListener listener(a.host, a.port);
    std::unique_ptr<SocketStream> server;
    std::thread acceptor([&] { server = listener.accept(); });
    auto client = SocketStream::connect(a.host, listener.port());
    acceptor.join();
    ctx.err << "socket transport on " << a.host << ':' << listener.port() << '\n';
    result = run_demo(*server, *client, group, mode, a.sessions, value_for, as_bytes(a.seed));
  } else {
    throw UsageError("--transport must be loopback or socket");
  }

  const auto& [receiver, committer] = result;
  if (!a.transcript_path.empty()) write_file(a.transcript_path, encode_eqct(committer.transcript));
  bool all_accepted = receiver.sessions.size() == a.sessions;
  for (const auto& [id, s] : receiver.sessions) {
    all_accepted = all_accepted && s.verdict == Verdict::kAccepted;
    ctx.out << "session " << id.value << ' ' << verdict_name(s.verdict);
    if (s.opening) ctx.out << " value=" << s.opening->x.to_string();
    ctx.out << '\n';
  }
  return all_accepted ? kOk : kVerificationFailed;
}

struct SimulateArgs {
  std::string schedule_path;
  std::size_t sessions = 0;
  std::string strategy = "honest";
  std::vector<std::string> values;
  std::vector<std::string> initial;
  std::vector<std::string> revised;
  std::string function = "sum";
  std::string receiver;
  std::string seed;
  std::string report_path;
  std::string transcript_path;
};

int cmd_simulate(const Context& ctx, const GroupSource& src, const SimulateArgs& a) {
  GroupSource effective = src;
  if (!effective.given()) effective.toy = true;
  Group group = load_group(effective);
  require_seed(a.seed);
  Bytes text = read_file(a.schedule_path);
  Schedule schedule =
      parse_schedule(std::string_view(reinterpret_cast<const char*>(text.data()), text.size()),
                     a.sessions);
  const auto& field = group.field();

  CommitterStrategy strategy;
  std::string receiver = a.receiver;
  if (a.strategy == "honest") {
    strategy = HonestStrategy{parse_scalars(a.values, field)};
  } else if (a.strategy == "equivocator") {
    auto revised = parse_scalars(a.revised, field);
    auto initial = a.initial.empty() ? std::vector<Scalar>(revised.size(), field.zero())
                                     : parse_scalars(a.initial, field);
    strategy = EquivocatorStrategy{std::move(initial), std::move(revised)};
    if (receiver.empty()) receiver = "trapdoor";
  } else if (a.strategy == "adversarial") {
    if (a.function == "sum") {
      strategy = sum_of_digests();
    } else if (a.function == "hash") {
      strategy = hash_of_concatenation();
    } else {
      throw UsageError("--f must be sum or hash");
    }
  } else {
    throw UsageError("--strategy must be honest, equivocator or adversarial");
  }
  if (receiver.empty()) receiver = "honest";

  RunOptions options{group, parse_mode(receiver), Bytes(a.seed.begin(), a.seed.end()), {}};
  RunReport report;
  try {
    report = run(schedule, strategy, options);
  } catch (const Error& e) {
    if (e.code() == Errc::kInvalidParams) throw UsageError(e.what());
    throw;
  }
  std::string text_report = format_report(report);
  if (!a.report_path.empty()) {
    write_file(a.report_path, as_bytes(text_report));
  } else {
    ctx.out << text_report;
  }
  if (!a.transcript_path.empty()) write_file(a.transcript_path, encode_eqct(report.transcript));
  bool all_accepted = true;
  for (const auto& s : report.sessions) {
    all_accepted = all_accepted && s.outcome == Outcome::kAccepted;
    if (!a.report_path.empty()) {
      ctx.out << "session " << s.id.value << ' ' << outcome_name(s.outcome);
      if (s.opened_value) ctx.out << " value=" << s.opened_value->to_string();
      ctx.out << '\n';
    }
  }
  return all_accepted ? kOk : kVerificationFailed;
}

int cmd_hiding_check(const Context& ctx, const GroupSource& src, const std::string& params_path,
                     const std::string& seed) {
  std::optional<CommitParams> params;
  if (!params_path.empty()) {
    params = decode_commit_params(read_file(params_path));
  } else {
    GroupSource effective = src;
    if (!effective.given()) effective.toy = true;
    Group group = load_group(effective);
    params = setup_honest(group, as_bytes(seed.empty() ? std::string("hiding-check") : seed));
  }
  const auto& field = params->group.field();
  if (field.order() > mpz_class(1) << 16) {
    throw UsageError("hiding-check enumerates Z_q and needs q <= 2^16");
  }
  auto reference = hiding_distribution(*params, field.zero());
  unsigned long identical = 0;
  unsigned long total = field.order().get_ui();
  for (unsigned long x = 0; x < total; ++x) {
    if (hiding_distribution(*params, field.reduce(x)) == reference) ++identical;
  }
  bool ok = identical == total;
  if (ctx.hex) {
    ctx.out << (ok ? "01" : "00") << '\n';
  } else {
    ctx.out << (ok ? "identical distributions: " : "distributions differ: ") << identical << '/'
            << total << " values\n";
  }
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-log equivocal commitments: commit, open, equivocate, extract, and "
               "concurrent-session simulation."};
  app.name("eqcom");
  app.require_subcommand(1);
  Context ctx{out, err};
  app.add_flag("--hex", ctx.hex, "Print only hex-encoded results");

  std::function<int()> action;

  // gen-params
  unsigned gp_bits = 0;
  std::string gp_seed, gp_out;
  auto* gen = app.add_subcommand("gen-params", "Generate a safe-prime group");
  gen->add_option("--q-bits", gp_bits, "Bit length of q")->required()->check(CLI::Range(4u, 4096u));
  gen->add_option("--seed", gp_seed, "Deterministic seed");
  gen->add_option("--out", gp_out, "Write the encoded parameters here");
  gen->callback([&] { action = [&] { return cmd_gen_params(ctx, gp_bits, gp_seed, gp_out); }; });

  // setup
  GroupSource setup_src;
  bool setup_trapdoor_flag = false;
  std::string setup_seed, setup_out, setup_secret;
  auto* setup = app.add_subcommand("setup", "Create commitment parameters (g, B)");
  setup_src.attach(setup);
  setup->add_flag("--trapdoor", setup_trapdoor_flag, "Sample B = g^b and keep b");
  setup->add_option("--seed", setup_seed, "Public seed (honest) or DRBG seed (trapdoor)");
  setup->add_option("--out", setup_out, "Write the commitment parameters here");
  setup->add_option("--secret-out", setup_secret, "Write the trapdoor b here");
  setup->callback([&] {
    action = [&] {
      return cmd_setup(ctx, setup_src, setup_trapdoor_flag, setup_seed, setup_out, setup_secret);
    };
  });

  // commit
  std::string c_params, c_value, c_seed, c_out, c_opening;
  auto* com = app.add_subcommand("commit", "Commit to a value");
  com->add_option("--params", c_params, "Commitment parameters file")->required();
  com->add_option("--value", c_value, "Value x in Z_q")->required();
  com->add_option("--seed", c_seed, "Seed for the randomness r");
  com->add_option("--out", c_out, "Write the commitment Z here");
  com->add_option("--opening-out", c_opening, "Write the secret opening (x, r) here")->required();
  com->callback([&] {
    action = [&] { return cmd_commit(ctx, c_params, c_value, c_seed, c_out, c_opening); };
  });

  // verify
  std::string v_params, v_commitment, v_opening;
  auto* ver = app.add_subcommand("verify", "Check an opening against a commitment");
  ver->add_option("--params", v_params, "Commitment parameters file")->required();
  ver->add_option("--commitment", v_commitment, "Commitment file")->required();
  ver->add_option("--opening", v_opening, "Opening file")->required();
  ver->callback([&] { action = [&] { return cmd_verify(ctx, v_params, v_commitment, v_opening); }; });

  // equivocate
  std::string e_params, e_trapdoor, e_opening, e_value, e_out;
  auto* equ = app.add_subcommand("equivocate", "Reopen a commitment to another value");
  equ->add_option("--params", e_params, "Commitment parameters file")->required();
  equ->add_option("--trapdoor", e_trapdoor, "Trapdoor file")->required();
  equ->add_option("--opening", e_opening, "Existing opening file")->required();
  equ->add_option("--value", e_value, "New value x'")->required();
  equ->add_option("--out", e_out, "Write the new opening here")->required();
  equ->callback([&] {
    action = [&] { return cmd_equivocate(ctx, e_params, e_trapdoor, e_opening, e_value, e_out); };
  });

  // extract
  std::string x_params, x_q, x_out;
  std::vector<std::string> x_files, x_inline;
  auto* ext = app.add_subcommand("extract", "Recover b from two openings of one commitment");
  ext->add_option("--params", x_params, "Commitment parameters file");
  ext->add_option("--q", x_q, "Prime order q (when no --params)");
  ext->add_option("--opening", x_files, "Opening file (give twice)");
  ext->add_option("--inline", x_inline, "Opening as 'x,r' (give twice)");
  ext->add_option("--out", x_out, "Write the recovered trapdoor here");
  ext->callback([&] {
    action = [&] { return cmd_extract(ctx, x_params, x_q, x_files, x_inline, x_out); };
  });

  // demo-protocol
  GroupSource demo_src;
  DemoArgs demo;
  auto* dem = app.add_subcommand("demo-protocol", "Run receiver and committer end to end");
  demo_src.attach(dem);
  dem->add_option("--sessions", demo.sessions, "Number of concurrent sessions")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  dem->add_option("--value", demo.values, "Committed value (once, or once per session)");
  dem->add_option("--transport", demo.transport, "loopback or socket");
  dem->add_option("--host", demo.host, "Socket host");
  dem->add_option("--port", demo.port, "Socket port (0 picks one)");
  dem->add_option("--receiver", demo.receiver, "honest or trapdoor");
  dem->add_option("--seed", demo.seed, "Master seed");
  dem->add_option("--transcript", demo.transcript_path, "Write the committer transcript (.eqct)");
  dem->callback([&] { action = [&] { return cmd_demo(ctx, demo_src, demo); }; });

  // simulate
  GroupSource sim_src;
  SimulateArgs sim;
  auto* simc = app.add_subcommand("simulate", "Run a scheduled multi-session simulation");
  sim_src.attach(simc);
  simc->add_option("--schedule", sim.schedule_path, "Schedule file of session:action lines")
      ->required();
  simc->add_option("--sessions", sim.sessions, "Session count (default: from the schedule)");
  simc->add_option("--strategy", sim.strategy, "honest, equivocator or adversarial");
  simc->add_option("--values", sim.values, "Honest values, one per session");
  simc->add_option("--initial", sim.initial, "Equivocator initial values (default 0)");
  simc->add_option("--revised", sim.revised, "Equivocator revised values");
  simc->add_option("--f", sim.function, "Adversarial function: sum or hash");
  simc->add_option("--receiver", sim.receiver, "honest or trapdoor");
  simc->add_option("--seed", sim.seed, "Master seed");
  simc->add_option("--report", sim.report_path, "Write the text report here (default stdout)");
  simc->add_option("--transcript", sim.transcript_path, "Write the transcript (.eqct)");
  simc->callback([&] { action = [&] { return cmd_simulate(ctx, sim_src, sim); }; });

  // hiding-check
  GroupSource hide_src;
  std::string h_params, h_seed;
  auto* hid = app.add_subcommand("hiding-check", "Exhaustively compare commitment distributions");
  hide_src.attach(hid);
  hid->add_option("--params", h_params, "Commitment parameters file");
  hid->add_option("--seed", h_seed, "Public seed for B");
  hid->callback([&] { action = [&] { return cmd_hiding_check(ctx, hide_src, h_params, h_seed); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    return kMalformedInput;
  }
}

}  // namespace eqcom::cli
