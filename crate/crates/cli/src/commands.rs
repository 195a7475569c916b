use serde_json::{json, Value};
use vgg_core::cycle::{canonicalize, cycle_payoffs, lemma2_is_nash};
use vgg_core::dynamics::{
    check_potential_descent, find_br_cycle, is_cycle_instance, potential, run_dynamic, CycleSearch,
    Outcome, Policy, Selection, TieBreak,
};
use vgg_core::equilibria::{enumerate_equilibria, verify_payoff_bounds, SearchOptions};
use vgg_core::experiment::{run_suite, SuiteConfig};
use vgg_core::graph::export_dot;
use vgg_core::rational;
use vgg_core::reductions::{
    build_3partition_game, discrepancy_family, expand_generalized, gadget_search,
    reduction_roundtrip, three_partition_oracle, Gadget, ThreePartitionInstance,
};
use vgg_core::structure::{star_partition, verify_close_lemma};
use vgg_core::{cycle_instance, Distance, Error, Game, GameInstance, GameMode, Result};

use crate::input::{read_instance, read_text, write_text};
use crate::*;

pub fn run(cli: &Cli) -> Result<Report> {
    let threads = cli.threads;
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Equilibria(a) => equilibria(a, threads),
        Command::Dynamics(a) => dynamics(a, threads),
        Command::CycleCheck(a) => cycle_check(a),
        Command::Reduce(a) => reduce(a, threads),
        Command::GadgetSearch(a) => gadget(a, threads),
        Command::Family(a) => family(a),
        Command::ExportDot(a) => dot(a),
        Command::Suite(a) => suite(a, threads),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn instance_value(inst: &GameInstance) -> Value {
    serde_json::from_str(&inst.to_json()).expect("instance JSON is valid")
}

fn rationals(v: &[vgg_core::Rational]) -> Value {
    Value::from(v.iter().map(rational::to_string).collect::<Vec<_>>())
}

fn analyze(args: &AnalyzeArgs) -> Result<Report> {
    let inst = read_instance(args.input.instance.as_deref())?;
    let mode: GameMode = args.mode.mode.into();
    let game = Game::new(inst.clone());
    let dist = game.distances();
    let diameter = (0..inst.n())
        .flat_map(|u| dist.row(u).iter().copied())
        .max()
        .unwrap_or(Distance::Finite(0));
    let mut report = json!({
        "n": inst.n(),
        "k": inst.k(),
        "edges": inst.graph().edge_count(),
        "facilities": inst.facilities().len(),
        "total_weight": inst.total_weight(),
        "standard": inst.is_standard(),
        "connected": inst.is_connected(),
        "diameter": to_value(&diameter),
    });
    let Some(profile) = &args.profile else {
        return Ok(Report {
            json: report,
            positive: true,
        });
    };
    game.check_profile(profile)?;
    let payoffs = game.payoffs(profile, mode);
    let best: Vec<Value> = (0..profile.len())
        .map(|i| {
            let br = game.best_responses(profile, i, mode);
            json!({
                "player": i,
                "vertices": br.vertices,
                "value": rational::to_string(&br.value),
                "improves": br.value > payoffs[i],
            })
        })
        .collect();
    let nash = game.is_nash(profile, mode);
    let h = game.delaunay_graph(profile);
    let radii: Vec<Option<u32>> = (0..profile.len())
        .map(|i| game.cell_radius(profile, i, mode).ok())
        .collect();
    let stars = (h.n() >= 2 && h.is_connected())
        .then(|| star_partition(&h))
        .transpose()?;
    let obj = report.as_object_mut().expect("object");
    obj.insert("mode".into(), to_value(&mode));
    obj.insert("profile".into(), json!(profile));
    obj.insert("payoffs".into(), rationals(&payoffs));
    obj.insert("social_cost".into(), to_value(&game.social_cost(profile)));
    obj.insert("nash".into(), json!(nash));
    obj.insert("best_responses".into(), Value::from(best));
    obj.insert("player_graph_edges".into(), json!(h.edges()));
    obj.insert("cell_radii".into(), json!(radii));
    obj.insert("star_partition".into(), to_value(&stars));
    Ok(Report {
        json: report,
        positive: nash,
    })
}

fn equilibria(args: &EquilibriaArgs, threads: Option<usize>) -> Result<Report> {
    let inst = read_instance(args.input.instance.as_deref())?;
    let mode: GameMode = args.mode.mode.into();
    let game = Game::new(inst.clone());
    let opts = SearchOptions {
        budget: args.budget.budget,
        threads,
    };
    let report = enumerate_equilibria(&game, mode, opts)?;
    let mut json = to_value(&report);
    let obj = json.as_object_mut().expect("object");
    let bounds = if inst.is_standard() && inst.is_connected() && mode == GameMode::Shared {
        Some(verify_payoff_bounds(&report, &inst)?)
    } else {
        None
    };
    obj.insert("payoff_bounds".into(), to_value(&bounds));
    if args.structure {
        if mode != GameMode::Shared || !inst.is_standard() || !inst.is_connected() {
            return Err(Error::InvalidArgument(
                "--structure needs a connected standard instance in shared mode".into(),
            ));
        }
        let mut pairs = 0usize;
        let mut stars = 0usize;
        let mut failures = Vec::new();
        for f in &report.equilibria {
            for g in &report.equilibria {
                pairs += 1;
                let check = verify_close_lemma(&game, &f.profile, &g.profile)?;
                stars += check.stars.len();
                if !check.all_pass() {
                    failures.push(json!({ "f": f.profile, "f_prime": g.profile, "stars": to_value(&check.stars) }));
                }
            }
        }
        obj.insert(
            "structure".into(),
            json!({ "pairs": pairs, "stars_checked": stars, "failures": failures }),
        );
    }
    Ok(Report {
        positive: report.count() > 0,
        json,
    })
}

fn dynamics(args: &DynamicsArgs, threads: Option<usize>) -> Result<Report> {
    let mode: GameMode = args.mode.mode.into();
    if args.search_cycle {
        let search = CycleSearch {
            mode,
            distinct_starts: args.distinct_starts,
            budget: args.budget.budget,
            threads,
        };
        let witness = find_br_cycle(args.n_min..=args.n_max, args.k_min..=args.k_max, search)?;
        return Ok(Report {
            positive: witness.is_some(),
            json: json!({ "found": witness.is_some(), "witness": to_value(&witness) }),
        });
    }
    let inst = read_instance(args.input.instance.as_deref())?;
    let start = args.start.clone().expect("clap requires --start");
    let game = Game::new(inst.clone());
    let policy = Policy {
        selection: match args.selection {
            SelectionChoice::LowestIndex => Selection::LowestIndex,
            SelectionChoice::Random => Selection::Random,
        },
        tie_break: match args.tie_break {
            TieBreakChoice::LowestVertex => TieBreak::LowestVertex,
            TieBreakChoice::Random => TieBreak::Random,
        },
        seed: args.seed,
        max_steps: args.max_steps,
    };
    let run = run_dynamic(&game, &start, mode, policy)?;
    if let Some(path) = &args.trace_out {
        let lines: String = run
            .trace
            .iter()
            .map(|m| serde_json::to_string(m).expect("moves serialize") + "\n")
            .collect();
        write_text(path, &lines)?;
    }
    let mut json = to_value(&run);
    let obj = json.as_object_mut().expect("object");
    obj.insert("mode".into(), to_value(&mode));
    obj.insert("policy".into(), to_value(&policy));
    if mode == GameMode::Disjoint && is_cycle_instance(&inst) && potential(&inst, &start).is_ok() {
        let mut profile = start.clone();
        let mut values = vec![potential(&inst, &profile)?];
        for m in &run.trace {
            profile[m.player] = m.to;
            values.push(potential(&inst, &profile)?);
        }
        let descending = check_potential_descent(&inst, &start, &run.trace).is_ok();
        obj.insert(
            "potential".into(),
            json!({ "values": to_value(&values), "strictly_decreasing": descending }),
        );
    }
    Ok(Report {
        positive: matches!(run.outcome, Outcome::Converged { .. }),
        json,
    })
}

fn cycle_check(args: &CycleCheckArgs) -> Result<Report> {
    if let Some(k) = args.k {
        if k != args.positions.len() {
            return Err(Error::InvalidArgument(format!(
                "--k {k} does not match {} positions",
                args.positions.len()
            )));
        }
    }
    let profile = canonicalize(args.n, &args.positions)?;
    let verdict = lemma2_is_nash(&profile);
    let game = Game::new(cycle_instance(args.n, args.positions.len())?);
    let engine_nash = game.is_nash(&args.positions, GameMode::Shared);
    let violated: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
    Ok(Report {
        positive: verdict.nash,
        json: json!({
            "n": args.n,
            "k": args.positions.len(),
            "positions": args.positions,
            "canonical": to_value(&profile),
            "facility_payoffs": rationals(&cycle_payoffs(&profile)),
            "nash": verdict.nash,
            "violated": violated,
            "engine_nash": engine_nash,
            "agree": engine_nash == verdict.nash,
        }),
    })
}

fn load_gadget(path: Option<&str>) -> Result<Gadget> {
    match path {
        Some(p) => Gadget::from_json(&read_text(Some(p))?),
        None => Gadget::bundled(),
    }
}

fn reduce(args: &ReduceArgs, threads: Option<usize>) -> Result<Report> {
    let text = read_text(args.input.instance.as_deref())?;
    match args.task {
        ReduceTask::Expand => {
            let inst = GameInstance::from_json(&text)?;
            let e = expand_generalized(&inst)?;
            Ok(Report {
                positive: true,
                json: json!({
                    "original_n": e.original_n,
                    "hub_start": e.hub_start,
                    "instance": instance_value(&e.instance),
                }),
            })
        }
        ReduceTask::Build => {
            let tp = ThreePartitionInstance::from_json(&text)?;
            let built = build_3partition_game(&tp, &load_gadget(args.gadget.as_deref())?)?;
            let solution = three_partition_oracle(&tp)
                .map(|g| built.solution_profile(&g))
                .transpose()?;
            Ok(Report {
                positive: true,
                json: json!({
                    "constants": to_value(&built.constants),
                    "constant_checks": to_value(&built.constants.check(&tp)),
                    "triple_start": built.triple_start,
                    "gadget_start": built.gadget_start,
                    "gadget_anchor": built.gadget_anchor,
                    "solution_profile": solution,
                    "instance": instance_value(&built.instance),
                }),
            })
        }
        ReduceTask::Roundtrip => {
            let tp = ThreePartitionInstance::from_json(&text)?;
            let opts = SearchOptions {
                budget: args.budget.budget,
                threads,
            };
            let report = reduction_roundtrip(&tp, &load_gadget(args.gadget.as_deref())?, opts)?;
            Ok(Report {
                positive: report.nash_exists,
                json: to_value(&report),
            })
        }
    }
}

fn gadget(args: &GadgetSearchArgs, threads: Option<usize>) -> Result<Report> {
    let found = gadget_search(args.seed, args.budget, threads)?;
    let text = found.gadget.to_json();
    if let Some(path) = &args.out {
        write_text(path, &(text.clone() + "\n"))?;
    }
    let mut json: Value = serde_json::from_str(&text).expect("gadget JSON is valid");
    let obj = json.as_object_mut().expect("object");
    obj.insert("candidate".into(), json!(found.candidate));
    obj.insert("verdict".into(), to_value(&found.gadget.verdict));
    Ok(Report {
        json,
        positive: true,
    })
}

fn family(args: &FamilyArgs) -> Result<Report> {
    let fam = discrepancy_family(args.k, args.a, args.b.unwrap_or(args.a * args.a))?;
    let text = fam.to_json();
    if let Some(path) = &args.out {
        write_text(path, &(text.clone() + "\n"))?;
    }
    Ok(Report {
        json: serde_json::from_str(&text).expect("family JSON is valid"),
        positive: true,
    })
}

fn dot(args: &ExportDotArgs) -> Result<Report> {
    let inst = read_instance(args.input.instance.as_deref())?;
    let text = export_dot(&inst, args.profile.as_deref())?;
    let json = match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            json!({ "out": path, "bytes": text.len() })
        }
        None => json!({ "dot": text }),
    };
    Ok(Report {
        json,
        positive: true,
    })
}

fn suite(args: &SuiteArgs, threads: Option<usize>) -> Result<Report> {
    let config = SuiteConfig::from_json(&read_text(args.config.as_deref())?)?;
    let table = run_suite(
        &config,
        SearchOptions {
            budget: args.budget.budget,
            threads,
        },
    );
    if let Some(path) = &args.text_out {
        write_text(path, &table.to_text())?;
    }
    Ok(Report {
        json: to_value(&table),
        positive: true,
    })
}
