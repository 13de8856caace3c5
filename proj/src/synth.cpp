// Copyright 2026 The phonia authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phonia/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "phonia/contour.hpp"
#include "phonia/csv.hpp"
#include "phonia/error.hpp"
#include "phonia/rng.hpp"

namespace phonia {

double definitional_perturbation_pct(const std::vector<double>& series) {
  if (series.size() < 2) return 0.0;
  double sum_abs_diff = 0.0, sum = 0.0;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    sum_abs_diff += std::abs(series[i + 1] - series[i]);
  }
  for (double v : series) sum += v;
  const double mean = sum / static_cast<double>(series.size());
  if (std::abs(mean) < 1e-300) return 0.0;
  return sum_abs_diff / static_cast<double>(series.size() - 1) / mean * 100.0;
}

SynthResult generate_phonation(const SynthParams& p) {
  if (p.f0_hz < 50.0 || p.f0_hz > 500.0 || p.duration_s < 0.5 ||
      p.sample_rate_hz < 8000 || p.n_harmonics < 1 || p.jitter_pct < 0.0 ||
      p.shimmer_pct < 0.0) {
    throw Error(Err::InvalidParams, "synth parameters out of range");
  }
  // leave headroom for upward period excursions under jitter
  const double f_top =
      p.f0_hz * p.n_harmonics * (1.0 + 3.0 * p.jitter_pct / 100.0);
  if (f_top >= p.sample_rate_hz / 2.0) {
    throw Error(Err::AliasingRisk, "f0 * n_harmonics exceeds Nyquist");
  }

  const auto n = static_cast<std::size_t>(
      std::llround(p.duration_s * p.sample_rate_hz));
  const double base_period = p.sample_rate_hz / p.f0_hz;

  Rng rng = make_rng(p.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto clamped_gauss = [&]() { return std::clamp(gauss(rng), -3.0, 3.0); };

  std::vector<double> harmonic_amp(static_cast<std::size_t>(p.n_harmonics));
  for (int h = 1; h <= p.n_harmonics; ++h) {
    harmonic_amp[static_cast<std::size_t>(h - 1)] = 1.0 / h;
  }

  // draw every cycle up front; one spare so the amplitude lookup below can
  // reference the next pulse
  const auto max_cycles = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / (base_period * 0.7))) + 2;
  std::vector<double> cyc_period(max_cycles), cyc_amp(max_cycles);
  for (std::size_t k = 0; k < max_cycles; ++k) {
    cyc_period[k] =
        base_period * (1.0 + p.jitter_pct / 100.0 * clamped_gauss());
    cyc_amp[k] = std::max(0.05,
                          1.0 + p.shimmer_pct / 100.0 * clamped_gauss());
  }

  // Pulse k peaks exactly at integer phase k, i.e. at sample sum(P_0..k-1).
  // The amplitude switches at the inter-pulse trough (round(phase)) so each
  // pulse is rendered with a single cycle amplitude.
  std::vector<double> clean(n, 0.0);
  double phase = 0.0;
  std::size_t cycle = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t amp_idx =
        phase - static_cast<double>(cycle) < 0.5 ? cycle : cycle + 1;
    double w = 0.0;
    for (int h = 1; h <= p.n_harmonics; ++h) {
      w += harmonic_amp[static_cast<std::size_t>(h - 1)] *
           std::cos(2.0 * std::numbers::pi * h * phase);
    }
    clean[t] = cyc_amp[std::min(amp_idx, max_cycles - 1)] * w;
    phase += 1.0 / cyc_period[std::min(cycle, max_cycles - 1)];
    if (phase >= static_cast<double>(cycle + 1)) ++cycle;
  }

  // pulse marks of completed cycles; the trailing partial cycle is dropped
  std::vector<double> marks{0.0};
  for (std::size_t k = 0; k < max_cycles; ++k) {
    const double next = marks.back() + cyc_period[k];
    if (next > static_cast<double>(n - 1)) break;
    marks.push_back(next);
  }
  const std::size_t complete = marks.size() - 1;
  std::vector<double> periods(cyc_period.begin(),
                              cyc_period.begin() +
                                  static_cast<std::ptrdiff_t>(complete));
  const std::vector<double> amps = cycle_peak_amplitudes(clean, marks);

  double harmonic_power = 0.0;
  for (double v : clean) harmonic_power += v * v;
  harmonic_power /= static_cast<double>(n);

  std::vector<double> samples = clean;
  double noise_power = 0.0;
  if (std::isfinite(p.hnr_db)) {
    const double target_noise = harmonic_power / std::pow(10.0, p.hnr_db / 10.0);
    const double sigma = std::sqrt(target_noise);
    for (std::size_t t = 0; t < n; ++t) {
      const double nz = sigma * gauss(rng);
      samples[t] += nz;
      noise_power += nz * nz;
    }
    noise_power /= static_cast<double>(n);
  }

  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.9 / peak : 1.0;
  for (double& v : samples) v *= scale;

  SynthResult res;
  res.recording.samples = std::move(samples);
  res.recording.sample_rate_hz = p.sample_rate_hz;
  res.truth.periods_samples = periods;
  res.truth.amplitudes = amps;
  double f0_sum = 0.0;
  for (double per : periods) f0_sum += p.sample_rate_hz / per;
  res.truth.f0_mean_hz = f0_sum / static_cast<double>(periods.size());
  res.truth.jitter_pct = definitional_perturbation_pct(periods);
  res.truth.shimmer_pct = definitional_perturbation_pct(amps);
  res.truth.hnr_db = noise_power > 0.0
                         ? 10.0 * std::log10(harmonic_power / noise_power)
                         : std::numeric_limits<double>::infinity();
  return res;
}

std::string generate_cohort(const CohortSpec& spec,
                            const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::vector<csv::Row> manifest;
  manifest.push_back({"recording_path", "subject_id", "group", "sex", "age",
                      "updrs3", "disease_duration"});

  std::uint64_t group_index = 0;
  std::uint64_t recording_index = 0;
  for (const CohortGroupParams* gp : {&spec.group_a, &spec.group_b}) {
    Rng rng = make_rng(spec.seed, 1000 + group_index);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const std::string label = group_name(gp->group);
    for (int s = 0; s < gp->n_subjects; ++s) {
      const double f0 = gp->f0_lo_hz + uni(rng) * (gp->f0_hi_hz - gp->f0_lo_hz);
      const double jit =
          std::max(0.0, gp->jitter_pct + gp->jitter_sd * gauss(rng));
      const double shim =
          std::max(0.0, gp->shimmer_pct + gp->shimmer_sd * gauss(rng));
      const double hnr = gp->hnr_db + gp->hnr_sd * gauss(rng);
      const std::string subject =
          label + "_S" + std::to_string(s + 1);
      for (int r = 0; r < gp->recordings_per_subject; ++r) {
        SynthParams p;
        p.f0_hz = std::clamp(f0 * (1.0 + 0.02 * gauss(rng)), 60.0, 400.0);
        p.jitter_pct = jit;
        p.shimmer_pct = shim;
        p.hnr_db = hnr;
        p.duration_s = spec.duration_s;
        p.sample_rate_hz = spec.sample_rate_hz;
        p.seed = mix_seed(spec.seed, ++recording_index * 7919);
        const SynthResult gen = generate_phonation(p);

        const std::string stem =
            label + "_s" + std::to_string(s + 1) + "_r" + std::to_string(r + 1);
        const std::string wav_name = stem + ".wav";
        write_wav((fs::path(out_dir) / wav_name).string(),
                  gen.recording.samples, spec.sample_rate_hz);

        nlohmann::json truth = {
            {"f0_hz", p.f0_hz},
            {"jitter_pct_nominal", p.jitter_pct},
            {"shimmer_pct_nominal", p.shimmer_pct},
            {"hnr_db_nominal", p.hnr_db},
            {"jitter_pct_realized", gen.truth.jitter_pct},
            {"shimmer_pct_realized", gen.truth.shimmer_pct},
            {"hnr_db_realized", gen.truth.hnr_db},
            {"f0_mean_hz_realized", gen.truth.f0_mean_hz},
            {"seed", p.seed},
        };
        std::ofstream sidecar(fs::path(out_dir) / (stem + ".json"));
        sidecar << truth.dump(2) << "\n";

        manifest.push_back({wav_name, subject, label,
                            s % 2 == 0 ? "F" : "M",
                            std::to_string(50 + (s * 3) % 30), "", ""});
      }
    }
    ++group_index;
  }

  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.csv").string();
  csv::write_file(manifest_path, manifest);
  return manifest_path;
}

}  // namespace phonia
