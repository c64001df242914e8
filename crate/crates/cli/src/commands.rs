//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectrum_auctions::analysis::{
    channel_requirement_sweep, deviation_oracle, ladder_deviation_oracle, monte_carlo,
    nud_am_fixture_gain, DeviationClass, DeviationReport, Instance, LadderInstance,
    MonteCarloResult, SweepConfig,
};
use spectrum_auctions::io::{load_json, save_json, OutcomeDoc, ProfilesDoc, TopologyDoc};
use spectrum_auctions::{
    constant_ladders, first_marginal_profiles, fixtures, generate_topology, run_nud_am,
    run_nud_wspam, run_sc_spam, run_small, run_vcg, sample_ladder_profiles, sample_profiles,
    AuctionOutcome, ConflictGraph, LadderProfile, Mechanism, OperatorProfile, Regime,
    TopologySpec, VcgOutcome, DEFAULT_VCG_CAP,
};

use crate::kv::{parse_sizes, Config};
use crate::{CliError, CliResult, FixturesArgs, FuzzArgs, RunArgs, SweepArgs, EXIT_VIOLATION};

/// One instance with both profile views, ready for any mechanism.
struct LoadedInstance {
    name: String,
    graph: ConflictGraph,
    linear: Vec<OperatorProfile>,
    ladders: Vec<LadderProfile>,
    demands: Vec<Vec<u32>>,
    default_k: u32,
}

fn parse_mechanism(name: &str) -> CliResult<Mechanism> {
    name.parse()
        .map_err(|e: spectrum_auctions::Error| CliError::usage(e.to_string()))
}

fn load_fixture(name: &str) -> CliResult<LoadedInstance> {
    let instance = match name {
        "fig2" => {
            fixtures::self_check_fig2().map_err(|e| CliError::violation(e.to_string()))?;
            let f = fixtures::fig2();
            let demands = f.profiles.iter().map(|p| p.demands.clone()).collect();
            LoadedInstance {
                name: name.into(),
                ladders: constant_ladders(&f.profiles),
                linear: f.profiles,
                graph: f.graph,
                demands,
                default_k: f.k,
            }
        }
        "sec4" => {
            fixtures::self_check_sec4().map_err(|e| CliError::violation(e.to_string()))?;
            let f = fixtures::sec4();
            let demands = f.profiles.iter().map(|p| p.demands.clone()).collect();
            LoadedInstance {
                name: name.into(),
                ladders: constant_ladders(&f.profiles),
                linear: f.profiles,
                graph: f.graph,
                demands,
                default_k: f.k,
            }
        }
        "sec5" => {
            fixtures::self_check_sec5().map_err(|e| CliError::violation(e.to_string()))?;
            let f = fixtures::sec5();
            LoadedInstance {
                name: name.into(),
                linear: first_marginal_profiles(&f.profiles),
                ladders: f.profiles,
                graph: f.graph,
                demands: f.demands,
                default_k: f.k,
            }
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown fixture {other:?} (expected one of {})",
                fixtures::FIXTURE_NAMES.join(", ")
            )))
        }
    };
    Ok(instance)
}

fn load_files(topology: &Path, profiles: &Path) -> CliResult<LoadedInstance> {
    let topo: TopologyDoc = load_json(topology).map_err(CliError::from_run)?;
    let graph = topo.to_graph().map_err(CliError::from_run)?;
    let doc: ProfilesDoc = load_json(profiles).map_err(CliError::from_run)?;
    let demands = doc.demands();
    let has_ladders = doc.operators.iter().any(|e| e.ladders.is_some());
    let (linear, ladders) = if has_ladders {
        let ladders = doc.to_ladder_profiles().map_err(CliError::from_run)?;
        (first_marginal_profiles(&ladders), ladders)
    } else {
        let linear = doc.to_profiles().map_err(CliError::from_run)?;
        let ladders = constant_ladders(&linear);
        (linear, ladders)
    };
    Ok(LoadedInstance {
        name: topology
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".into()),
        graph,
        linear,
        ladders,
        demands,
        default_k: 1,
    })
}

fn load_instance(
    fixture: Option<&str>,
    topology: Option<&Path>,
    profiles: Option<&Path>,
) -> CliResult<LoadedInstance> {
    match (fixture, topology, profiles) {
        (Some(name), None, None) => load_fixture(name),
        (None, Some(t), Some(p)) => load_files(t, p),
        (None, None, None) => Err(CliError::usage(
            "provide either --fixture or both --topology and --profiles",
        )),
        _ => Err(CliError::usage(
            "--fixture conflicts with --topology/--profiles, and --topology needs --profiles",
        )),
    }
}

fn ensure_out_dir(out_dir: &Path) -> CliResult<()> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::io(format!("cannot create {}: {e}", out_dir.display())))
}

fn render_auction_trace(mechanism: Mechanism, outcome: &AuctionOutcome) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "mechanism: {mechanism}");
    let _ = writeln!(text, "welfare: {}", outcome.welfare);
    let _ = writeln!(text, "utilization: {}", outcome.utilization());
    let _ = writeln!(text, "channels used: {}", outcome.channels_used);
    for record in &outcome.trace {
        let price = record
            .price
            .map(|p| p.to_string())
            .unwrap_or_else(|| "-".into());
        let stations: Vec<String> = record
            .base_stations
            .iter()
            .map(|v| v.to_string())
            .collect();
        let _ = writeln!(
            text,
            "round {:>3} channel {:>2}: winner op{} bid {} price {} stations [{}]",
            record.round,
            record.channel,
            record.winner,
            record.winner_bid,
            price,
            stations.join(", ")
        );
    }
    for (op, price) in outcome.prices.iter().enumerate() {
        let _ = writeln!(
            text,
            "operator {op}: allocated {} price {price}",
            outcome.operator_allocation(op)
        );
    }
    text
}

fn render_vcg_trace(outcome: &VcgOutcome) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "mechanism: vcg");
    let _ = writeln!(text, "welfare: {}", outcome.welfare);
    let _ = writeln!(text, "utilization: {}", outcome.utilization());
    for (op, stations) in outcome.allocation.iter().enumerate() {
        for (bs, &x) in stations.iter().enumerate() {
            if x > 0 {
                let _ = writeln!(
                    text,
                    "allocated op{op}/bs{bs} price {}",
                    outcome.bs_prices[op][bs]
                );
            }
        }
    }
    for (op, price) in outcome.operator_prices.iter().enumerate() {
        let _ = writeln!(text, "operator {op}: price {price}");
    }
    text
}

pub fn cmd_run(args: RunArgs, config: &Config, out_dir: &Path) -> CliResult<()> {
    let fixture = args
        .fixture
        .clone()
        .or_else(|| config.get("fixture").map(String::from));
    let topology = args.topology.clone().or_else(|| config.get_path("topology"));
    let profiles = args.profiles.clone().or_else(|| config.get_path("profiles"));
    let instance = load_instance(fixture.as_deref(), topology.as_deref(), profiles.as_deref())?;

    let mut mechanism_names = args.mechanism.clone();
    if mechanism_names.is_empty() {
        if let Some(raw) = config.get("mechanism").or_else(|| config.get("mechanisms")) {
            mechanism_names = raw.split(',').map(|s| s.trim().to_string()).collect();
        }
    }
    if mechanism_names.is_empty() {
        return Err(CliError::usage("no mechanism requested (use --mechanism)"));
    }
    let mechanisms: Vec<Mechanism> = mechanism_names
        .iter()
        .map(|n| parse_mechanism(n))
        .collect::<CliResult<_>>()?;

    let k = match args.k {
        Some(k) => k,
        None => config.get_parsed::<u32>("k")?.unwrap_or(instance.default_k),
    };
    let vcg_cap = match args.vcg_cap {
        Some(c) => c,
        None => config
            .get_parsed::<usize>("vcg-cap")?
            .unwrap_or(DEFAULT_VCG_CAP),
    };

    ensure_out_dir(out_dir)?;
    for mechanism in mechanisms {
        let (doc, trace) = match mechanism {
            Mechanism::ScSpam => {
                let o = run_sc_spam(&instance.graph, &instance.linear)
                    .map_err(CliError::from_run)?;
                (
                    OutcomeDoc::auction(mechanism.name(), o.clone()),
                    render_auction_trace(mechanism, &o),
                )
            }
            Mechanism::NudAm => {
                let o = run_nud_am(&instance.graph, &instance.linear, k)
                    .map_err(CliError::from_run)?;
                (
                    OutcomeDoc::auction(mechanism.name(), o.clone()),
                    render_auction_trace(mechanism, &o),
                )
            }
            Mechanism::NudWspam => {
                let o = run_nud_wspam(&instance.graph, &instance.ladders, &instance.demands, k)
                    .map_err(CliError::from_run)?;
                (
                    OutcomeDoc::auction(mechanism.name(), o.clone()),
                    render_auction_trace(mechanism, &o),
                )
            }
            Mechanism::Vcg => {
                let o = run_vcg(&instance.graph, &instance.linear, vcg_cap)
                    .map_err(CliError::from_run)?;
                let trace = render_vcg_trace(&o);
                (OutcomeDoc::optimal(o), trace)
            }
            Mechanism::Small => {
                let o = run_small(&instance.graph, &instance.linear, k)
                    .map_err(CliError::from_run)?;
                (
                    OutcomeDoc::auction(mechanism.name(), o.clone()),
                    render_auction_trace(mechanism, &o),
                )
            }
        };
        let outcome_path = out_dir.join(format!("outcome-{mechanism}.json"));
        save_json(&outcome_path, &doc).map_err(CliError::from_run)?;
        let trace_path = out_dir.join(format!("trace-{mechanism}.txt"));
        fs::write(&trace_path, &trace)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", trace_path.display())))?;
        println!(
            "{}: {} -> {}",
            instance.name,
            mechanism,
            outcome_path.display()
        );
        print!("{trace}");
    }
    Ok(())
}

fn write_deviation_csv(path: &Path, reports: &[DeviationReport]) -> CliResult<()> {
    let mut body = String::from(
        "mechanism,operator,class,descriptor,truthful_utility,deviated_utility,gain,violation,certified\n",
    );
    for r in reports {
        let _ = writeln!(
            body,
            "{},{},{},{:?},{},{},{},{},{}",
            r.mechanism,
            r.operator,
            r.class.name(),
            r.descriptor,
            r.truthful_utility,
            r.deviated_utility,
            r.gain,
            r.violation,
            r.certified
        );
    }
    fs::write(path, body).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_fuzz(args: FuzzArgs, config: &Config, out_dir: &Path) -> CliResult<()> {
    let mechanism_name = args
        .mechanism
        .clone()
        .or_else(|| config.get("mechanism").map(String::from))
        .ok_or_else(|| CliError::usage("no mechanism requested (use --mechanism)"))?;
    let mechanism = parse_mechanism(&mechanism_name)?;
    let trials = match args.trials {
        Some(t) => t,
        None => config.get_parsed::<usize>("trials")?.unwrap_or(10_000),
    };
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let seed = match args.seed {
        Some(s) => s,
        None => config.get_parsed::<u64>("seed")?.unwrap_or(1),
    };
    let sizes = match args.sizes.as_deref().or_else(|| config.get("sizes")) {
        Some(raw) => parse_sizes(raw)?,
        None => (6..=15).collect(),
    };
    let k = match args.k {
        Some(k) => k,
        None => config.get_parsed::<u32>("k")?.unwrap_or(3),
    };
    let degree_max = match args.degree_max {
        Some(d) => d,
        None => config.get_parsed::<u32>("degree-max")?.unwrap_or(2),
    };
    let fixture = args
        .fixture
        .clone()
        .or_else(|| config.get("fixture").map(String::from));

    ensure_out_dir(out_dir)?;
    let mut reports: Vec<DeviationReport> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    match mechanism {
        Mechanism::NudAm => {
            let fixture = fixture.unwrap_or_else(|| "sec4".into());
            if fixture != "sec4" {
                return Err(CliError::usage(
                    "nud-am fuzzing checks the documented counterexample; only --fixture sec4 is supported",
                ));
            }
            let report = nud_am_fixture_gain().map_err(CliError::from_run)?;
            let found = report.violation;
            let gain = report.gain;
            reports.push(report);
            let path = out_dir.join("deviations-nud-am.csv");
            write_deviation_csv(&path, &reports)?;
            println!("nud-am fixture sec4: gain {gain} -> {}", path.display());
            if found {
                println!("expected violation found; this mechanism is not truthful by design");
                return Ok(());
            }
            return Err(CliError::violation(
                "expected the documented counterexample to show a gain, but none appeared",
            ));
        }
        Mechanism::ScSpam => {
            let mut instance_seed = seed;
            while reports.len() < trials {
                let instance = if let Some(name) = fixture.as_deref() {
                    let loaded = load_fixture(name)?;
                    Instance {
                        graph: loaded.graph,
                        profiles: loaded.linear,
                        k: 1,
                    }
                } else {
                    instance_seed = instance_seed.wrapping_add(1);
                    sample_linear_instance(&sizes, degree_max, instance_seed)
                        .map_err(CliError::from_run)?
                };
                for operator in 0..instance.graph.num_operators() {
                    let batch = deviation_oracle(
                        mechanism,
                        &instance,
                        operator,
                        DeviationClass::ProportionalScale,
                        4,
                        &mut rng,
                    )
                    .map_err(CliError::from_run)?;
                    reports.extend(batch);
                    let redistributed = deviation_oracle(
                        mechanism,
                        &instance,
                        operator,
                        DeviationClass::BsRedistribution,
                        1,
                        &mut rng,
                    )
                    .map_err(CliError::from_run)?;
                    reports.extend(redistributed);
                }
            }
        }
        Mechanism::NudWspam => {
            let mut instance_seed = seed;
            while reports.len() < trials {
                let instance = if let Some(name) = fixture.as_deref() {
                    let loaded = load_fixture(name)?;
                    LadderInstance {
                        graph: loaded.graph,
                        profiles: loaded.ladders,
                        demands: loaded.demands,
                        k: loaded.default_k,
                    }
                } else {
                    instance_seed = instance_seed.wrapping_add(1);
                    sample_ladder_instance(&sizes, degree_max, k, instance_seed)
                        .map_err(CliError::from_run)?
                };
                for operator in 0..instance.graph.num_operators() {
                    for class in [
                        DeviationClass::LadderRaiseAtBs,
                        DeviationClass::LadderLowerAtBs,
                    ] {
                        let batch =
                            ladder_deviation_oracle(&instance, operator, class, 2, &mut rng)
                                .map_err(CliError::from_run)?;
                        reports.extend(batch);
                    }
                }
            }
        }
        other => {
            return Err(CliError::usage(format!(
                "mechanism {other} has no deviation classes to fuzz"
            )))
        }
    }

    let certified_violations = reports.iter().filter(|r| r.certified && r.violation).count();
    let reported_gains = reports.iter().filter(|r| !r.certified && r.violation).count();
    let path = out_dir.join(format!("deviations-{mechanism}.csv"));
    write_deviation_csv(&path, &reports)?;
    println!(
        "{mechanism}: {} reports, {certified_violations} certified violations, {reported_gains} report-only gains -> {}",
        reports.len(),
        path.display()
    );
    if certified_violations > 0 {
        return Err(CliError {
            code: EXIT_VIOLATION,
            message: format!(
                "{certified_violations} certified deviation(s) gained utility; see {}",
                path.display()
            ),
        });
    }
    Ok(())
}

fn sample_linear_instance(
    sizes: &[usize],
    degree_max: u32,
    seed: u64,
) -> Result<Instance, spectrum_auctions::Error> {
    let size = sizes[(seed as usize) % sizes.len()];
    let spec = TopologySpec::uniform(TopologySpec::split_evenly(size, 3), degree_max, seed);
    let graph = generate_topology(&spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1357_9bdf);
    let profiles = sample_profiles(&graph, Regime::SingleChannel, &mut rng);
    Ok(Instance {
        graph,
        profiles,
        k: 1,
    })
}

fn sample_ladder_instance(
    sizes: &[usize],
    degree_max: u32,
    k: u32,
    seed: u64,
) -> Result<LadderInstance, spectrum_auctions::Error> {
    let size = sizes[(seed as usize) % sizes.len()];
    let spec = TopologySpec::uniform(TopologySpec::split_evenly(size, 3), degree_max, seed);
    let graph = generate_topology(&spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2468_ace0);
    let profiles = sample_ladder_profiles(&graph, Regime::NonUniform, &mut rng);
    let demands: Vec<Vec<u32>> = profiles.iter().map(|p| p.demands()).collect();
    Ok(LadderInstance {
        graph,
        profiles,
        demands,
        k,
    })
}

fn default_mechanisms(regime: Regime) -> Vec<Mechanism> {
    match regime {
        Regime::SingleChannel => vec![Mechanism::Vcg, Mechanism::ScSpam, Mechanism::Small],
        Regime::UniformDemand2 => vec![Mechanism::NudAm, Mechanism::Small],
        Regime::NonUniform => vec![Mechanism::NudWspam],
    }
}

fn write_sweep_csvs(
    out_dir: &Path,
    regime: Regime,
    result: &MonteCarloResult,
) -> CliResult<(PathBuf, PathBuf)> {
    let rows_path = out_dir.join(format!("sweep-{regime}-rows.csv"));
    let mut body = String::from(
        "mechanism,size,k,replicate,seed,welfare,utilization,runtime_ms,violation_count,error\n",
    );
    for r in &result.rows {
        let welfare = r.welfare.map(|w| w.to_string()).unwrap_or_default();
        let utilization = r.utilization.map(|u| u.to_string()).unwrap_or_default();
        let _ = writeln!(
            body,
            "{},{},{},{},{},{},{},{:.3},{},{}",
            r.mechanism,
            r.size,
            r.k,
            r.replicate,
            r.seed,
            welfare,
            utilization,
            r.runtime_ms,
            r.violation_count,
            r.error.clone().unwrap_or_default().replace(',', ";")
        );
    }
    fs::write(&rows_path, body)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", rows_path.display())))?;

    let agg_path = out_dir.join(format!("sweep-{regime}-agg.csv"));
    let mut body = String::from(
        "mechanism,size,k,replicates,errors,welfare_mean,welfare_std,utilization_mean,utilization_std,runtime_ms_mean\n",
    );
    for a in &result.aggregates {
        let _ = writeln!(
            body,
            "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.3}",
            a.mechanism,
            a.size,
            a.k,
            a.replicates,
            a.errors,
            a.welfare_mean,
            a.welfare_std,
            a.utilization_mean,
            a.utilization_std,
            a.runtime_ms_mean
        );
    }
    fs::write(&agg_path, body)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", agg_path.display())))?;
    Ok((rows_path, agg_path))
}

pub fn cmd_sweep(args: SweepArgs, config: &Config, out_dir: &Path) -> CliResult<()> {
    let regime_name = args
        .regime
        .clone()
        .or_else(|| config.get("regime").map(String::from))
        .ok_or_else(|| CliError::usage("no regime requested (use --regime)"))?;
    let regime: Regime = regime_name
        .parse()
        .map_err(|e: spectrum_auctions::Error| CliError::usage(e.to_string()))?;

    let sizes = match args.sizes.as_deref().or_else(|| config.get("sizes")) {
        Some(raw) => parse_sizes(raw)?,
        None => match regime {
            Regime::SingleChannel => (6..=21).collect(),
            Regime::UniformDemand2 | Regime::NonUniform => (1..=10).map(|i| i * 30).collect(),
        },
    };
    let mechanisms = match args.mechanisms.as_deref().or_else(|| config.get("mechanisms")) {
        Some(raw) => raw
            .split(',')
            .map(|s| parse_mechanism(s.trim()))
            .collect::<CliResult<Vec<_>>>()?,
        None => default_mechanisms(regime),
    };

    let mut sweep = SweepConfig::new(regime, mechanisms, sizes);
    if let Some(r) = args.replicates.or(config.get_parsed("replicates")?) {
        sweep.replicates = r;
    }
    if let Some(k) = args.k.or(config.get_parsed("k")?) {
        sweep.k = k;
    }
    if let Some(s) = args.seed.or(config.get_parsed("seed")?) {
        sweep.base_seed = s;
    }
    if let Some(n) = args.operators.or(config.get_parsed("operators")?) {
        sweep.num_operators = n;
    }
    if let Some(d) = args.degree_max.or(config.get_parsed("degree-max")?) {
        sweep.degree_max = d;
    }
    if let Some(c) = args.vcg_cap.or(config.get_parsed("vcg-cap")?) {
        sweep.vcg_cap = c;
    }

    let result = monte_carlo(&sweep).map_err(|e| match e {
        spectrum_auctions::Error::InvalidConfig(m) => CliError::usage(m),
        other => CliError::from_run(other),
    })?;

    ensure_out_dir(out_dir)?;
    let (rows_path, agg_path) = write_sweep_csvs(out_dir, regime, &result)?;
    println!("sweep {regime}: {} rows -> {}", result.rows.len(), rows_path.display());
    println!("aggregates -> {}", agg_path.display());

    // The nonuniform regime also reports how many channels each instance
    // needs to satisfy all demand.
    if regime == Regime::NonUniform {
        let k_max = 8 * sweep.regime.max_demand();
        let rows = channel_requirement_sweep(&sweep, k_max).map_err(CliError::from_run)?;
        let path = out_dir.join(format!("sweep-{regime}-channels.csv"));
        let mut body = String::from("size,replicate,seed,required_k\n");
        for r in &rows {
            let required = r
                .required
                .map(|k| k.to_string())
                .unwrap_or_else(|| format!(">{k_max}"));
            let _ = writeln!(body, "{},{},{},{}", r.size, r.replicate, r.seed, required);
        }
        fs::write(&path, body)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
        println!("channel requirements -> {}", path.display());
    }
    for a in &result.aggregates {
        println!(
            "{:>9} size {:>3}: welfare {:>10.2} +- {:>8.2}, utilization {:>8.2}, errors {}",
            a.mechanism.name(),
            a.size,
            a.welfare_mean,
            a.welfare_std,
            a.utilization_mean,
            a.errors
        );
    }
    Ok(())
}

pub fn cmd_fixtures(args: FixturesArgs, out_dir: &Path) -> CliResult<()> {
    let entries: [(&str, &str); 3] = [
        ("fig2", "3 operators x 3 stations, single channel"),
        ("sec4", "2 channels, non-uniform demand, linear bids"),
        ("sec5", "2 channels, non-uniform demand, ladder bids"),
    ];
    let mut failed = false;
    for (name, description) in entries {
        let check = match name {
            "fig2" => fixtures::self_check_fig2(),
            "sec4" => fixtures::self_check_sec4(),
            _ => fixtures::self_check_sec5(),
        };
        match check {
            Ok(()) => println!("{name:5} ok   {description}"),
            Err(e) => {
                failed = true;
                println!("{name:5} FAIL {description}: {e}");
            }
        }
    }
    if let Some(dir) = args.emit {
        let dir = if dir.as_os_str().is_empty() {
            out_dir.to_path_buf()
        } else {
            dir
        };
        ensure_out_dir(&dir)?;
        emit_fixture_files(&dir).map_err(CliError::from_run)?;
        println!("fixture documents written to {}", dir.display());
    }
    if failed {
        return Err(CliError::violation("fixture self-check failed"));
    }
    Ok(())
}

fn emit_fixture_files(dir: &Path) -> Result<(), spectrum_auctions::Error> {
    let fig2 = fixtures::fig2();
    save_json(&dir.join("fig2-topology.json"), &TopologyDoc::from_graph(&fig2.graph))?;
    save_json(
        &dir.join("fig2-profiles.json"),
        &ProfilesDoc::from_profiles(&fig2.profiles),
    )?;
    let sec4 = fixtures::sec4();
    save_json(&dir.join("sec4-topology.json"), &TopologyDoc::from_graph(&sec4.graph))?;
    save_json(
        &dir.join("sec4-profiles.json"),
        &ProfilesDoc::from_profiles(&sec4.profiles),
    )?;
    let sec5 = fixtures::sec5();
    save_json(&dir.join("sec5-topology.json"), &TopologyDoc::from_graph(&sec5.graph))?;
    save_json(
        &dir.join("sec5-profiles.json"),
        &ProfilesDoc::from_ladder_profiles(&sec5.profiles, &sec5.demands),
    )?;
    Ok(())
}
