// vchild: counsellor-training virtual child server, log replay and the
// evaluation statistics toolkit.

#include <httplib.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "vchild/error.hpp"
#include "vchild/llm/http_client.hpp"
#include "vchild/nlu/classifier.hpp"
#include "vchild/nlu/http_embedder.hpp"
#include "vchild/session/http_api.hpp"
#include "vchild/session/log.hpp"
#include "vchild/session/manager.hpp"
#include "vchild/session/setup.hpp"
#include "vchild/stats/agreement.hpp"
#include "vchild/stats/asaq.hpp"
#include "vchild/stats/bayes.hpp"
#include "vchild/stats/table.hpp"

namespace {

using namespace vchild;

#ifndef VCHILD_DATA_DIR
#define VCHILD_DATA_DIR "data"
#endif
#ifndef VCHILD_TEMPLATE_DIR
#define VCHILD_TEMPLATE_DIR "templates"
#endif

struct ResourceFlags {
  std::string scenarios = VCHILD_DATA_DIR "/scenarios";
  std::string dataset = VCHILD_DATA_DIR "/intents_sample.jsonl";
  std::string templates = VCHILD_TEMPLATE_DIR;
  std::string embed_endpoint;
  std::string embed_model = "nomic-embed-text";
  std::size_t embed_dim = 768;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--scenarios", scenarios, "Scenario directory")->capture_default_str();
    cmd->add_option("--dataset", dataset, "Annotated intent examples (JSONL)")->capture_default_str();
    cmd->add_option("--templates", templates, "Prompt template directory")->capture_default_str();
    cmd->add_option("--embed-endpoint", embed_endpoint, "Embedding endpoint; trigram embeddings when empty");
    cmd->add_option("--embed-model", embed_model)->capture_default_str();
    cmd->add_option("--embed-dim", embed_dim)->capture_default_str();
  }

  session::EngineResources load() const {
    std::shared_ptr<const nlu::Embedder> embedder;
    if (!embed_endpoint.empty()) {
      embedder = std::make_shared<nlu::HttpEmbedder>(embed_endpoint, embed_model, embed_dim);
    }
    return session::load_resources({scenarios, dataset, templates}, embedder);
  }
};

void print_kv(const std::string& key, double value) {
  std::cout << std::left << std::setw(16) << (key + ":") << std::setprecision(6) << value << '\n';
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << std::left << std::setw(16) << (key + ":") << value << '\n';
}

void print_summary(const stats::PosteriorSummary& s) {
  print_kv("point", s.point);
  print_kv("reference", s.reference);
  print_kv("posterior_prob", s.posterior_prob);
  std::ostringstream hdi;
  hdi << std::setprecision(6) << "[" << s.hdi_low << ", " << s.hdi_high << "]";
  print_kv("hdi95", hdi.str());
  if (s.t_stat) print_kv("t_stat", *s.t_stat);
  if (s.df) print_kv("df", *s.df);
  if (s.scale) print_kv("scale", *s.scale);
}

std::vector<std::string> string_column(const stats::Table& t, std::size_t c) {
  std::vector<std::string> out;
  for (const auto& row : t.rows) out.push_back(row.at(c));
  return out;
}

// Columns to use: the named ones, or every column except `skip`.
std::vector<std::size_t> pick_columns(const stats::Table& t, const std::vector<std::string>& names,
                                      const std::string& skip) {
  std::vector<std::size_t> cols;
  if (!names.empty()) {
    for (const auto& n : names) cols.push_back(t.column(n));
  } else {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      if (t.header[c] != skip) cols.push_back(c);
    }
  }
  return cols;
}

stats::PairedSample paired_from(const stats::Table& t, const std::string& a, const std::string& b) {
  stats::PairedSample s;
  s.a = t.numeric_column(t.column(a));
  s.b = t.numeric_column(t.column(b));
  return s;
}

httplib::Server* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual child for helpline counsellor training"};
  app.require_subcommand(1);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  ResourceFlags serve_res;
  serve_res.add_to(serve);
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string llm_endpoint;
  std::string llm_model;
  std::string pacing = "on";
  double min_delay = 15.0, max_delay = 25.0, budget = 900.0;
  std::string log_dir, static_dir;
  bool debug = false;
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--llm-endpoint", llm_endpoint, "Chat-completion endpoint (also " +
                                                        std::string(llm::kEndpointEnv) + ")");
  serve->add_option("--llm-model", llm_model, "Model name sent to the endpoint");
  serve->add_option("--pacing", pacing, "Rule-condition reply delay")->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  serve->add_option("--min-delay", min_delay)->capture_default_str();
  serve->add_option("--max-delay", max_delay)->capture_default_str();
  serve->add_option("--budget", budget, "Session length in seconds")->capture_default_str();
  serve->add_option("--log-dir", log_dir, "Write one JSONL transcript per run here");
  serve->add_option("--static", static_dir, "Serve a web client from this directory");
  serve->add_flag("--debug", debug, "Enable /sessions/{id}/debug/bdi");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a logged session and compare child messages");
  ResourceFlags replay_res;
  replay_res.add_to(replay_cmd);
  std::string logfile;
  replay_cmd->add_option("logfile", logfile)->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--llm-endpoint", llm_endpoint, "Needed for llm_integrated logs");

  // nlu-query
  auto* nlu_cmd = app.add_subcommand("nlu-query", "Classify one trainee utterance with the rule NLU");
  ResourceFlags nlu_res;
  nlu_res.add_to(nlu_cmd);
  std::string query;
  double tau = nlu::kDefaultTau;
  std::size_t k = 5;
  nlu_cmd->add_option("text", query)->required();
  nlu_cmd->add_option("--tau", tau)->capture_default_str();
  nlu_cmd->add_option("-k", k, "Neighbours to list")->capture_default_str();

  // statistics
  std::string file, col_a, col_b, skip_col, success;
  std::vector<std::string> columns;
  double reference = 0.0, margin = 0.1, p0 = 0.5;
  long k_succ = -1, n_trials = -1;
  bool counts = false, long_format = false;
  std::string cond_a = "llm_integrated", cond_b = "rule_based", key_path = VCHILD_DATA_DIR "/asaq_short24.csv";

  auto* kc = app.add_subcommand("kappa-cohen", "Cohen's kappa between two label columns");
  kc->add_option("file", file)->required()->check(CLI::ExistingFile);
  kc->add_option("--a", col_a, "First rater column")->required();
  kc->add_option("--b", col_b, "Second rater column")->required();

  auto* kf = app.add_subcommand("kappa-fleiss", "Fleiss' kappa over items x raters labels");
  kf->add_option("file", file)->required()->check(CLI::ExistingFile);
  kf->add_option("--columns", columns, "Rater (or category) columns; default all");
  kf->add_option("--skip", skip_col, "Identifier column to ignore");
  kf->add_flag("--counts", counts, "Rows are category counts instead of labels");

  auto* ic = app.add_subcommand("icc", "ICC(2,1) over items x raters scores");
  ic->add_option("file", file)->required()->check(CLI::ExistingFile);
  ic->add_option("--columns", columns, "Rater columns; default all");
  ic->add_option("--skip", skip_col, "Identifier column to ignore");

  auto* pb = app.add_subcommand("paired-bayes", "Bayesian paired comparison, differences a - b");
  pb->add_option("file", file)->required()->check(CLI::ExistingFile);
  pb->add_option("--a", col_a)->required();
  pb->add_option("--b", col_b)->required();
  pb->add_option("--reference", reference)->capture_default_str();

  auto* ni = app.add_subcommand("noninferiority", "Posterior probability that a is not worse than b");
  ni->add_option("file", file)->required()->check(CLI::ExistingFile);
  ni->add_option("--a", col_a, "Paired format: column for condition a");
  ni->add_option("--b", col_b, "Paired format: column for condition b");
  ni->add_flag("--long", long_format, "Long format with columns item,coder,condition,score");
  ni->add_option("--cond-a", cond_a)->capture_default_str();
  ni->add_option("--cond-b", cond_b)->capture_default_str();
  ni->add_option("--margin", margin, "Margin as a fraction of the pooled sd")->capture_default_str();

  auto* bn = app.add_subcommand("binomial", "Bayesian binomial test of a preference rate");
  bn->add_option("file", file, "Table holding one choice per row")->check(CLI::ExistingFile);
  bn->add_option("--column", col_a, "Choice column (with --success)");
  bn->add_option("--success", success, "Value counted as a success");
  bn->add_option("--k", k_succ, "Successes");
  bn->add_option("--n", n_trials, "Trials");
  bn->add_option("--p0", p0)->capture_default_str();

  auto* aq = app.add_subcommand("asaq", "Score ASAQ responses (one respondent per row, one column per item)");
  aq->add_option("file", file)->required()->check(CLI::ExistingFile);
  aq->add_option("--key", key_path, "Item key CSV")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      session::EngineResources res = serve_res.load();
      session::EngineConfig config;
      config.budget_s = budget;
      config.pacing = {min_delay, max_delay, pacing == "on"};
      config.llm = config.llm.with_env_override();
      if (!llm_endpoint.empty()) config.llm.endpoint = llm_endpoint;
      if (!llm_model.empty()) config.llm.model = llm_model;
      res.chat = std::make_shared<llm::HttpChatClient>(config.llm.endpoint);
      auto engine = std::make_shared<const session::SessionEngine>(std::move(res), config);

      session::ManagerOptions mopts;
      if (!log_dir.empty()) mopts.log_dir = log_dir;
      session::SessionManager manager(engine, mopts);

      session::ApiOptions aopts;
      aopts.debug = debug;
      if (!static_dir.empty()) aopts.static_dir = static_dir;
      httplib::Server server;
      session::install_routes(server, manager, aopts);
      g_server = &server;
      std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
      std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
      std::cerr << "listening on http://" << host << ":" << port << " (pacing " << pacing << ", llm "
                << config.llm.endpoint << ")\n";
      if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << '\n';
        return 1;
      }
      return 0;
    }

    if (*replay_cmd) {
      const auto log = session::load_log(logfile);
      session::EngineResources res = replay_res.load();
      session::EngineConfig config;
      config.llm = config.llm.with_env_override();
      if (!llm_endpoint.empty()) config.llm.endpoint = llm_endpoint;
      if (log.header.condition == session::Condition::kLlmIntegrated) {
        res.chat = std::make_shared<llm::HttpChatClient>(config.llm.endpoint);
      }
      const auto report = session::replay(log, std::move(res), config);
      print_kv("log", logfile);
      print_kv("condition", std::string(session::to_string(log.header.condition)));
      print_kv("scenario", log.header.scenario_id);
      print_kv("seed", std::to_string(log.header.seed));
      print_kv("trainee", static_cast<double>(report.trainee_messages));
      print_kv("child", static_cast<double>(report.child_messages));
      print_kv("mismatches", static_cast<double>(report.mismatches.size()));
      for (const auto& m : report.mismatches) {
        std::cout << "  #" << m.index << " expected: " << m.expected << "\n  #" << m.index << " actual:   "
                  << m.actual << '\n';
      }
      print_kv("result", report.identical() ? "identical" : "differs");
      return report.identical() ? 0 : 2;
    }

    if (*nlu_cmd) {
      const session::EngineResources res = nlu_res.load();
      std::vector<nlu::Neighbour> hits;
      const auto decision = nlu::classify_rule(*res.store, *res.embedder, query, tau);
      nlu::retrieve_examples(*res.store, *res.embedder, query, k, &hits);
      print_kv("input", query);
      print_kv("tau", tau);
      print_kv("intent", decision.outcome);
      for (const auto& h : hits) {
        const auto& rec = res.store->record(h.index);
        std::cout << "  " << std::fixed << std::setprecision(4) << h.distance << "  " << std::left
                  << std::setw(26) << rec.intent_id << rec.text << '\n';
      }
      return 0;
    }

    if (*kc) {
      const auto t = stats::read_csv(file);
      const auto a = string_column(t, t.column(col_a));
      const auto b = string_column(t, t.column(col_b));
      print_kv("file", file);
      print_kv("raters", col_a + ", " + col_b);
      print_kv("items", static_cast<double>(a.size()));
      print_kv("kappa", stats::cohen_kappa(a, b));
      return 0;
    }

    if (*kf) {
      const auto t = stats::read_csv(file);
      const auto cols = pick_columns(t, columns, skip_col);
      stats::CountMatrix matrix;
      std::vector<std::string> categories;
      int raters = 0;
      if (counts) {
        for (const auto& row : t.rows) {
          std::vector<int> r;
          for (auto c : cols) r.push_back(static_cast<int>(stats::parse_double(row.at(c))));
          matrix.push_back(std::move(r));
        }
        for (auto c : cols) categories.push_back(t.header[c]);
        if (!matrix.empty()) for (int v : matrix.front()) raters += v;
      } else {
        std::vector<std::vector<std::string>> labels;
        for (const auto& row : t.rows) {
          std::vector<std::string> r;
          for (auto c : cols) r.push_back(row.at(c));
          labels.push_back(std::move(r));
        }
        matrix = stats::tally_labels(labels, &categories);
        raters = static_cast<int>(cols.size());
      }
      std::string cats;
      for (const auto& c : categories) cats += (cats.empty() ? "" : ", ") + c;
      print_kv("file", file);
      print_kv("items", static_cast<double>(matrix.size()));
      print_kv("raters", raters);
      print_kv("categories", cats);
      print_kv("kappa", stats::fleiss_kappa(matrix, raters));
      return 0;
    }

    if (*ic) {
      const auto t = stats::read_csv(file);
      const auto cols = pick_columns(t, columns, skip_col);
      std::vector<std::vector<double>> m(t.rows.size());
      for (auto c : cols) {
        const auto v = t.numeric_column(c);
        for (std::size_t i = 0; i < v.size(); ++i) m[i].push_back(v[i]);
      }
      print_kv("file", file);
      print_kv("items", static_cast<double>(m.size()));
      print_kv("raters", static_cast<double>(cols.size()));
      print_kv("icc_2_1", stats::icc(m));
      return 0;
    }

    if (*pb) {
      const auto s = paired_from(stats::read_csv(file), col_a, col_b);
      print_kv("file", file);
      print_kv("difference", col_a + " - " + col_b);
      print_kv("n", static_cast<double>(s.size()));
      print_summary(stats::bayes_paired_t(s, reference));
      return 0;
    }

    if (*ni) {
      const auto t = stats::read_csv(file);
      stats::PairedSample s;
      if (long_format) {
        std::vector<stats::Rating> ratings;
        const auto ci = t.column("item"), cc = t.column("coder"), cn = t.column("condition");
        const auto scores = t.numeric_column(t.column("score"));
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          ratings.push_back({t.rows[i].at(ci), t.rows[i].at(cc), t.rows[i].at(cn), scores[i]});
        }
        s = stats::aggregate_coder_ratings(ratings, cond_a, cond_b);
        print_kv("difference", cond_a + " - " + cond_b);
      } else {
        if (col_a.empty() || col_b.empty()) throw Error(Errc::InvalidInput, "--a and --b are required");
        s = paired_from(t, col_a, col_b);
        print_kv("difference", col_a + " - " + col_b);
      }
      print_kv("file", file);
      print_kv("n", static_cast<double>(s.size()));
      print_kv("margin", margin);
      print_summary(stats::noninferiority(s, margin));
      return 0;
    }

    if (*bn) {
      if (!file.empty()) {
        if (col_a.empty() || success.empty()) throw Error(Errc::InvalidInput, "--column and --success are required");
        const auto t = stats::read_csv(file);
        const auto values = string_column(t, t.column(col_a));
        n_trials = static_cast<long>(values.size());
        k_succ = static_cast<long>(std::count(values.begin(), values.end(), success));
        print_kv("file", file);
        print_kv("success", success);
      } else if (k_succ < 0 || n_trials < 0) {
        throw Error(Errc::InvalidInput, "give a file or both --k and --n");
      }
      print_kv("k", static_cast<double>(k_succ));
      print_kv("n", static_cast<double>(n_trials));
      print_kv("p0", p0);
      print_summary(stats::bayes_binomial(k_succ, n_trials, p0));
      return 0;
    }

    if (*aq) {
      const auto key = stats::load_asaq_key(key_path);
      const auto t = stats::read_csv(file);
      std::vector<stats::AsaqResponse> responses;
      for (const auto& row : t.rows) {
        stats::AsaqResponse r;
        for (std::size_t c = 0; c < t.header.size(); ++c) {
          if (!key.find(t.header[c])) continue;
          const double v = stats::parse_double(row.at(c));
          if (v != std::floor(v)) throw Error(Errc::OutOfScale, "non-integer response in " + t.header[c]);
          r[t.header[c]] = static_cast<int>(v);
        }
        responses.push_back(std::move(r));
      }
      const auto report = stats::asaq_score(responses, key);
      print_kv("file", file);
      print_kv("key", key_path);
      print_kv("respondents", static_cast<double>(responses.size()));
      for (const auto& [construct, m] : report.construct_means) print_kv(construct, m);
      print_kv("item_mean", report.overall_item_mean);
      print_kv("short_score", static_cast<double>(report.short_score));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
