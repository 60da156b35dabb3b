//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Expected values come from oracles written here, not
//! from the library under test.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use ogp_core::algorithms::{
    degree_greedy_is, gnn_forward, greedy_is, project_to_is, random_priority_is, Depth, LocalRule, RuleSpec,
};
use ogp_core::experiments::{
    density_experiment, fit_sqrt_scaling, greedy_ratio_experiment, local_vs_greedy_experiment,
    locality_perturbation_test, maxcut_point, maxcut_scaling_experiment, overlap_probe_on, Algorithm,
    CutAlgorithm, InstanceSpec, ProbeConfig, Sampler, ScalingPoint,
};
use ogp_core::generators::{gen_er, gen_regular};
use ogp_core::oracle::{exact_max_is, max_is_by_enumeration, overlap_spectrum_exact};
use ogp_core::{Graph, IndependentSet, SeededRng};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn independent_masks(g: &Graph) -> Vec<u32> {
    let adj = adjacency(g);
    (0u32..1 << g.n())
        .filter(|&m| (0..g.n()).all(|u| m >> u & 1 == 0 || adj[u] & m == 0))
        .collect()
}

fn is_independent(g: &Graph, members: &[usize]) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    set.len() == members.len() && g.edges().iter().all(|(u, v)| !(set.contains(u) && set.contains(v)))
}

fn is_maximal(g: &Graph, members: &[usize]) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    (0..g.n()).all(|u| set.contains(&u) || g.neighbors(u).iter().any(|v| set.contains(v)))
}

fn small_graph(rng: &mut SeededRng, i: usize) -> Graph {
    let n = rng.random_range(6..=16usize);
    if i.is_multiple_of(2) {
        let mut d = rng.random_range(2..=5usize).min(n - 1);
        if n * d % 2 == 1 {
            d -= 1;
        }
        gen_regular(n, d, rng).unwrap()
    } else {
        let d = rng.random_range(1.0..4.0f64).min((n - 1) as f64);
        gen_er(n, d, rng).unwrap()
    }
}

fn every_algorithm() -> Vec<Algorithm> {
    let mut algs = vec![Algorithm::Greedy, Algorithm::DegreeGreedy, Algorithm::RandomPriority];
    for spec in RuleSpec::library() {
        for r in 0..=3 {
            algs.push(Algorithm::Rule(spec.clone(), Depth(r)));
        }
    }
    algs
}

fn criterion_1() -> Outcome {
    let mut rng = SeededRng::new(101);
    let prepared: Vec<_> = every_algorithm().iter().map(|a| a.prepare().unwrap()).collect();
    let mut runs = 0;
    for i in 0..200 {
        let g = small_graph(&mut rng, i);
        let brute = independent_masks(&g).iter().map(|m| m.count_ones() as usize).max().unwrap();
        let bb = exact_max_is(&g).map_err(|e| e.to_string())?.optimum;
        let full = max_is_by_enumeration(&g).map_err(|e| e.to_string())?.optimum;
        if bb != brute || full != brute {
            return Err(format!("instance {i}: branch-and-bound {bb}, enumeration {full}, oracle {brute}"));
        }
        for alg in &prepared {
            let s = alg.run(&g, &mut rng);
            runs += 1;
            if !is_independent(&g, s.members()) || s.len() > brute {
                return Err(format!("instance {i}: {} returned {:?} (optimum {brute})", alg.algorithm(), s.members()));
            }
        }
    }
    Ok(format!("200 instances agree; {runs} algorithm outputs feasible and <= optimum"))
}

fn criterion_2() -> Outcome {
    let mut rng = SeededRng::new(202);
    let specs = RuleSpec::library();
    let rules: Vec<Box<dyn LocalRule>> = specs.iter().map(|s| s.build().unwrap()).collect();
    let mut maximal_checked = 0;
    for i in 0..10_000usize {
        let d = 3 + i % 18;
        let mut n = rng.random_range(d + 2..=d + 120);
        if n * d % 2 == 1 {
            n += 1;
        }
        let g = gen_regular(n, d, &mut rng).map_err(|e| e.to_string())?;
        let (name, set): (String, IndependentSet) = match i % 4 {
            0 => ("greedy".into(), greedy_is(&g, &mut rng)),
            1 => ("degree-greedy".into(), degree_greedy_is(&g, &mut rng)),
            2 => ("random-priority".into(), random_priority_is(&g, &mut rng)),
            _ => {
                let k = (i / 4) % rules.len();
                let depth = Depth((i / 4 / rules.len()) % 4);
                let state = gnn_forward(&g, rules[k].as_ref(), depth, &mut rng);
                (format!("{}@R={}", specs[k], depth.0), project_to_is(&g, &state, rules[k].as_ref()))
            }
        };
        if !is_independent(&g, set.members()) {
            return Err(format!("run {i}: {name} infeasible on n={n}, d={d}"));
        }
        if i % 4 < 2 {
            maximal_checked += 1;
            if !is_maximal(&g, set.members()) {
                return Err(format!("run {i}: {name} not maximal on n={n}, d={d}"));
            }
        }
    }
    Ok(format!("10000 runs feasible; {maximal_checked} greedy outputs maximal"))
}

fn criterion_3() -> Outcome {
    let est = density_experiment(&Algorithm::RandomPriority, 9, 100_000, 20, 303).map_err(|e| e.to_string())?;
    let z = (est.mean - 0.1) / est.stderr;
    let detail = format!("mean {:.6} stderr {:.6} z {:.2}", est.mean, est.stderr, z);
    if z.abs() <= 5.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4() -> Outcome {
    let est = greedy_ratio_experiment(100, 100_000, 20, 404).map_err(|e| e.to_string())?;
    let benchmark = 2.0 * 100f64.ln() / 100.0;
    let ratio = est.mean / benchmark;
    let detail = format!("mean {:.6} stderr {:.6} ratio {:.4}", est.mean, est.stderr, ratio);
    if (0.4..=0.65).contains(&ratio) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// Includes only `target`, and only when the floor of (sum of all labels)
// times 1e6 is even, so far-away labels can flip the decision.
struct GlobalAggregate {
    target: usize,
    sum: Mutex<f64>,
}

impl LocalRule for GlobalAggregate {
    fn name(&self) -> &str {
        "global-aggregate"
    }
    fn init(&self, node: usize, label: f64) -> Vec<f64> {
        let mut sum = self.sum.lock().unwrap();
        if node == 0 {
            *sum = 0.0;
        }
        *sum += label;
        vec![label, node as f64]
    }
    fn update(&self, _: usize, _: usize, own: &[f64], _: &[&[f64]]) -> Vec<f64> {
        own.to_vec()
    }
    fn readout(&self, h: &[f64]) -> bool {
        let sum = *self.sum.lock().unwrap();
        h[1] as usize == self.target && ((sum * 1e6).floor() as i64) % 2 == 0
    }
}

fn criterion_5() -> Outcome {
    let g = gen_regular(400, 3, &mut SeededRng::new(505)).unwrap();
    let mut checked = 0;
    for spec in RuleSpec::library() {
        let rule = spec.build().map_err(|e| e.to_string())?;
        for r in 0..=3 {
            let mut rng = SeededRng::new(5000 + r as u64);
            let rep = locality_perturbation_test(&g, rule.as_ref(), Depth(r), 17, 50, &mut rng)
                .map_err(|e| e.to_string())?;
            if !rep.passed || rep.changes != 0 {
                return Err(format!("{spec} at R={r}: {} membership changes", rep.changes));
            }
            checked += 1;
        }
    }
    let control = GlobalAggregate {
        target: 0,
        sum: Mutex::new(0.0),
    };
    let rep = locality_perturbation_test(&g, &control, Depth(1), 0, 50, &mut SeededRng::new(55))
        .map_err(|e| e.to_string())?;
    if rep.passed {
        return Err("global-aggregate control passed the locality test".into());
    }
    Ok(format!("{checked} rule/depth pairs local; control detected ({} changes)", rep.changes))
}

fn criterion_6() -> Outcome {
    let table =
        local_vs_greedy_experiment(20, 100_000, 3, &RuleSpec::library(), 10, 606).map_err(|e| e.to_string())?;
    let best = table.best_local_row().ok_or("no local rows")?;
    let dg = table.row("degree-greedy").ok_or("no degree-greedy row")?;
    let se = (best.stderr.powi(2) + dg.stderr.powi(2)).sqrt();
    let detail = format!(
        "best local {} {:.6} vs degree-greedy {:.6} (3 SE = {:.6})",
        best.algorithm,
        best.mean,
        dg.mean,
        3.0 * se
    );
    if best.mean <= dg.mean + 3.0 * se {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// Intersection sizes over unordered pairs of θ-optimal sets, diagonal
// included, by direct enumeration.
fn spectrum_support(g: &Graph, theta: f64) -> BTreeSet<usize> {
    let sets = independent_masks(g);
    let opt = sets.iter().map(|m| m.count_ones()).max().unwrap() as f64;
    let need = (theta * opt - 1e-9).ceil() as u32;
    let good: Vec<u32> = sets.into_iter().filter(|m| m.count_ones() >= need).collect();
    let mut out = BTreeSet::new();
    for (i, a) in good.iter().enumerate() {
        for b in &good[i..] {
            out.insert((a & b).count_ones() as usize);
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut rng = SeededRng::new(707);
    for i in 0..50 {
        let g = small_graph(&mut rng, i);
        for theta in [0.8, 0.9, 1.0] {
            let cfg = ProbeConfig {
                instance: InstanceSpec::regular(g.n(), 3),
                theta,
                sampler: Sampler::Exact,
                runs: 1,
                pairs: 10_000_000,
                include_diagonal: true,
                bins: 50,
            };
            let hist = overlap_probe_on(&g, &cfg, i as u64).map_err(|e| e.to_string())?;
            let exact = overlap_spectrum_exact(&g, theta, true).map_err(|e| e.to_string())?;
            let oracle: Vec<usize> = spectrum_support(&g, theta).into_iter().collect();
            if hist.support() != exact.support() || exact.support() != oracle {
                return Err(format!(
                    "graph {i} (n={}), theta {theta}: probe {:?}, spectrum {:?}, oracle {:?}",
                    g.n(),
                    hist.support(),
                    exact.support(),
                    oracle
                ));
            }
        }
    }
    Ok("50 graphs x 3 thetas: probe, spectrum and oracle supports equal".into())
}

fn half_edge_z(k: usize) -> Result<f64, String> {
    let pt = maxcut_point(k, 16.0, 10_000, 30, CutAlgorithm::RandomAssignment, 808 + k as u64, 0)
        .map_err(|e| e.to_string())?;
    let diffs: Vec<f64> = pt.cuts.iter().zip(&pt.edges).map(|(&c, &m)| c as f64 - m as f64 / 2.0).collect();
    let t = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / t;
    let var = diffs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
    Ok(mean / (var / t).sqrt())
}

fn criterion_8() -> Outcome {
    let z2 = half_edge_z(2)?;
    let z4 = half_edge_z(4)?;
    if z2.abs() > 4.0 || z4.abs() > 4.0 {
        return Err(format!("random cut - m/2: z = {z2:.2} (K=2), {z4:.2} (K=4)"));
    }

    let (a, gamma, k) = (-0.371, 0.4721, 3);
    let points: Vec<ScalingPoint> = [8.0f64, 16.0, 32.0, 64.0]
        .iter()
        .map(|&d| {
            let mean = d / (2.0 * k as f64) + a + gamma * d.sqrt();
            ScalingPoint {
                d,
                n: 1,
                cuts: vec![],
                edges: vec![],
                per_trial: vec![mean],
                mean,
                stderr: 0.0,
            }
        })
        .collect();
    let fit = fit_sqrt_scaling(k, points).map_err(|e| e.to_string())?;
    let (ea, eg) = (((fit.intercept - a) / a).abs(), ((fit.gamma - gamma) / gamma).abs());
    if ea > 1e-12 || eg > 1e-12 {
        return Err(format!("synthetic fit relative errors {ea:e}, {eg:e}"));
    }

    let flip = maxcut_scaling_experiment(
        2,
        &[8.0, 16.0, 32.0, 64.0],
        2000,
        8,
        CutAlgorithm::LocalFlip { max_rounds: 1000 },
        888,
    )
    .map_err(|e| e.to_string())?;
    let detail = format!(
        "random cut z {z2:.2}/{z4:.2}; synthetic fit err {:.1e}; local-flip gamma {:.4} +- {:.4}",
        ea.max(eg),
        flip.gamma,
        flip.gamma_se
    );
    if flip.gamma > 3.0 * flip.gamma_se {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ogp(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ogp"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("ogp {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).trim().to_string())
}

// CSV rows without the timestamp column.
fn csv_body(path: &Path) -> Result<Vec<Vec<String>>, String> {
    let mut r = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            Ok(rec.iter().take(7).map(str::to_string).collect())
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let configs = [
        "kind=greedy-ratio\nn=20000\nd=10\ntrials=6\nseed=9\n",
        "kind=density\nn=5000\nd=6\ntrials=5\nalgorithm=rule\nrule=threshold\ncoeffs=0.3,1,-0.5\ndepth=2\nseed=1\n",
        "kind=local-vs-greedy\nn=2000\nd=5\ntrials=4\ndepth=2\nseed=2\n",
        "kind=overlap-probe\nn=14\nd=3\ntheta=0.9\nsampler=exact\nseed=3\n",
        "kind=overlap-probe\nn=3000\nd=4\ntheta=0.4\nsampler=greedy\nruns=40\npairs=500\nseed=4\n",
        "kind=ogp-scan\nn=12\nd=3\nsampler=degree-greedy\nthetas=0.8,1\nruns=50\nseed=5\n",
        "kind=locality\nn=300\nd=3\nrule=neighbor-min\ndepth=2\nnode=4\ntrials=20\nseed=6\n",
        "kind=maxcut-scaling\nk=2\nn=1000\nalgorithm=local-flip\ndegrees=4,8,16\ntrials=4\nseed=7\n",
    ];
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (first, replay) = (tmp.path().join("first"), tmp.path().join("replay"));
    for (i, text) in configs.iter().enumerate() {
        let cfg = tmp.path().join(format!("c{i}.cfg"));
        std::fs::write(&cfg, text).map_err(|e| e.to_string())?;
        let csv1 = ogp(&["run", "--config", cfg.to_str().unwrap(), "--out", first.to_str().unwrap(), "--workers", "1"])?;
        let echo = Path::new(&csv1).with_extension("config");
        let csv2 = ogp(&["run", "--config", echo.to_str().unwrap(), "--out", replay.to_str().unwrap(), "--workers", "3"])?;
        let (a, b) = (csv_body(Path::new(&csv1))?, csv_body(Path::new(&csv2))?);
        if a.is_empty() || a != b {
            return Err(format!("config {i}: replay rows differ ({} vs {})", a.len(), b.len()));
        }
        if Path::new(&csv1).file_name() != Path::new(&csv2).file_name() {
            return Err(format!("config {i}: replay changed the run id"));
        }
    }
    Ok(format!("{} configs replayed byte-exactly with --workers 1 vs 3", configs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", criterion_1),
        ("feasibility and maximality", criterion_2),
        ("random-priority density", criterion_3),
        ("greedy ratio", criterion_4),
        ("locality", criterion_5),
        ("local <= baselines", criterion_6),
        ("overlap probe exactness", criterion_7),
        ("maxcut leading order", criterion_8),
        ("determinism and replay", criterion_9),
    ];
    let mut failed = BTreeMap::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = check();
        let secs = clock.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {detail}", i + 1);
                failed.insert(i + 1, detail);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed.keys().collect::<Vec<_>>());
        std::process::exit(1);
    }
}
