#include "lexpe/stats.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace lexpe {

StatsReport make_stats(const PeLexicon& pe, const FormIndex& index, double t_e) {
  StatsReport s;
  s.n_l = pe.meta.n_l;
  s.n_n = pe.meta.n_n;
  s.n_cpl = pe.meta.n_cpl;
  s.n_lfs_original = pe.meta.n_lfs_original;
  s.n_lfs_pe = pe.meta.n_lfs_pe;
  s.size_ratio = s.n_lfs_original ? double(s.n_lfs_pe) / double(s.n_lfs_original) : 0.0;
  s.t_e = t_e;
  s.n_generated = pe.meta.n_generated;
  s.n_forms = index.size();
  return s;
}

std::string StatsReport::table() const {
  char buf[512];
  std::string out = "     n_l      n_n    n_cpl    n_lfs   t_e(s)  t_e/n_l(s)  n_lfs(pe)   ratio\n";
  const double per = n_l ? t_e / double(n_l) : 0.0;
  if (std::isnan(t_e))
    std::snprintf(buf, sizeof buf, "%8zu %8zu %8zu %8zu %8s %11s %10zu %7.2f\n", n_l, n_n, n_cpl, n_lfs_original,
                  "-", "-", n_lfs_pe, size_ratio);
  else
    std::snprintf(buf, sizeof buf, "%8zu %8zu %8zu %8zu %8.3f %11.5f %10zu %7.2f\n", n_l, n_n, n_cpl,
                  n_lfs_original, t_e, per, n_lfs_pe, size_ratio);
  out += buf;
  std::snprintf(buf, sizeof buf, "n_cpl/n_l = %.4f, indexed forms = %zu, generated classes = %zu\n",
                n_l ? double(n_cpl) / double(n_l) : 0.0, n_forms, n_generated);
  out += buf;
  return out;
}

std::string StatsReport::json() const {
  nlohmann::json j;
  j["n_l"] = n_l;
  j["n_n"] = n_n;
  j["n_cpl"] = n_cpl;
  j["n_lfs_original"] = n_lfs_original;
  j["n_lfs_pe"] = n_lfs_pe;
  j["size_ratio"] = size_ratio;
  if (std::isnan(t_e))
    j["t_e"] = nullptr;
  else
    j["t_e"] = t_e;
  j["n_generated"] = n_generated;
  j["n_forms"] = n_forms;
  return j.dump(2);
}

WordMetrics word_metrics(const PeLexicon& pe, const FormIndex& index, std::string_view word) {
  WordMetrics m;
  for (const auto& e : index.lookup(word)) {
    const auto* c = pe.find(e.cls);
    if (!c) continue;
    const auto& r = pe.result_of(*c);
    m.found = true;
    m.n_s += r.key.tail.size();
    m.n_fs += r.p_f.size();
    for (const auto& f : r.p_f) m.n_afs += f.atomic_size();
    m.pe_n_fs += e.s.size() + count_structures(c->main, c->variants, c->defaults);
    m.pe_n_afs += c->main.atomic_size() + c->defaults.atomic_size();
    for (const auto& v : c->variants) m.pe_n_afs += v.atomic_size();
    for (auto i : e.s) {
      const auto& f = r.p_f[i - 1];
      m.pe_n_afs += f.atomic_size();
      m.n_dp += f.delayed_count();
    }
  }
  return m;
}

}  // namespace lexpe
