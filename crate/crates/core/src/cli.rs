//! The `cubefix` command-line front end: window construction, validation,
//! partitions, automaton building and verification, exact tables, samplers,
//! experiments, small-cancellation checks, presentation assembly, and the
//! end-to-end pipeline.
//!
//! Reports are JSON on stdout (or `--out`); identical configurations render
//! byte-identical reports. Exit codes: 0 all checks passed, 1 a check
//! failed, 2 input or format errors.

use crate::action::CubeAction;
use crate::automaton::{
    check_lambda_large, fixset_automaton, shape_check, verify_accepted_words_move,
    verify_progressing, Automaton, ShapeClass,
};
use crate::builder::{
    build_automaton_over, eps_threshold, growth_schedule, reduced_rank_threshold, BranchingTable,
    BuildTrace,
};
use crate::io;
use crate::letters::{parse_word, Alphabet, Letter};
use crate::median::MedianGraph;
use crate::partition::partition_full;
use crate::randgrp::{
    intersection_experiment, rips_assemble, sample_plain, sample_reduced, small_cancellation_check,
    Model, Origin, Presentation, RelatorSet,
};
use crate::rat::{parse_q, q, show_q, Q};
use crate::report::{self, to_json};
use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cubefix",
    version,
    about = "Median-graph geometry, progressing automata, and random-group experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Clone)]
pub struct WindowArgs {
    /// Built-in window: "tree" or "grid".
    #[arg(long)]
    pub complex: Option<String>,
    /// Free-group rank for tree windows.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Ball radius for tree windows.
    #[arg(long)]
    pub radius: Option<usize>,
    /// Grid view-box dimensions, e.g. "9,9".
    #[arg(long)]
    pub dims: Option<String>,
    /// Explicit action file.
    #[arg(long)]
    pub action: Option<PathBuf>,
    /// Basepoint override (explicit actions).
    #[arg(long)]
    pub basepoint: Option<String>,
}

impl WindowArgs {
    pub fn load(&self) -> Result<(CubeAction, String), CliError> {
        let (mut act, desc) = if let Some(path) = &self.action {
            (io::load_action(path)?, format!("file {}", path.display()))
        } else {
            match self.complex.as_deref() {
                Some("tree") => {
                    let rank = self.rank.unwrap_or(2);
                    let radius = self.radius.unwrap_or(10);
                    (
                        CubeAction::tree_ball(rank, radius),
                        format!("tree rank {rank} radius {radius}"),
                    )
                }
                Some("grid") => {
                    let dims: Vec<i64> = self
                        .dims
                        .as_deref()
                        .unwrap_or("9,9")
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse()
                                .map_err(|_| CliError::Input("bad dims".into()))
                        })
                        .collect::<Result<_, _>>()?;
                    let desc = format!(
                        "grid {}",
                        dims.iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join("x")
                    );
                    (CubeAction::grid(dims), desc)
                }
                Some(other) => {
                    return Err(CliError::Input(format!("unknown complex kind {other}")))
                }
                None => {
                    return Err(CliError::Input(
                        "need --complex tree|grid or --action <file>".into(),
                    ))
                }
            }
        };
        if let Some(bp) = &self.basepoint {
            let v = act
                .complex
                .parse_vertex(bp)
                .ok_or_else(|| CliError::Input(format!("unknown basepoint {bp}")))?;
            act.basepoint = v;
        }
        Ok((act, desc))
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Validate a graph file as a median graph.
    Validate {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition the alphabet relative to a word and a wall.
    Partition {
        #[command(flatten)]
        window: WindowArgs,
        /// Word over the alphabet (compact form, e.g. "ab'").
        #[arg(long, default_value = "")]
        word: String,
        /// Wall by representative edge "u~v".
        #[arg(long)]
        hyperplane: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a progressing automaton from an action.
    Build {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "3/4")]
        eps1: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the automaton JSON here.
        #[arg(long)]
        automaton_out: Option<PathBuf>,
    },
    /// Verify a checkpoint-labeled automaton against an action.
    Verify {
        #[arg(long)]
        automaton: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact branching table and derived constants.
    Dtable {
        #[arg(long)]
        eps0: String,
        #[arg(long)]
        n: usize,
        /// Also derive the growth schedule for this eps1.
        #[arg(long)]
        eps1: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a relator set in the density model.
    Sample {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: String,
        #[arg(long, value_name = "L")]
        len: usize,
        #[arg(long, default_value = "plain")]
        model: String,
        /// Resample duplicates so the set is duplicate-free.
        #[arg(long, default_value_t = false)]
        unique: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the probability that random relators meet a language.
    Experiment {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long)]
        lengths: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the metric small-cancellation condition.
    Smallcanc {
        #[arg(long)]
        relators: PathBuf,
        #[arg(long, default_value_t = 6)]
        p: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble a presentation from a base and a relator pool.
    Rips {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        pool: PathBuf,
        #[arg(long, default_value_t = 6)]
        p: u32,
        /// Flag the pool rank against the threshold for this dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Check the output for C'(1/p).
        #[arg(long, default_value_t = false)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Window -> basepoint -> build -> verify, with optional experiment.
    Pipeline {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "3/4")]
        eps1: String,
        /// Fix-set branch threshold.
        #[arg(long, default_value = "1/3")]
        c1: String,
        /// Length bound for the accepted-words check.
        #[arg(long, default_value_t = 8)]
        check_len: usize,
        /// Optional intersection experiment: density.
        #[arg(long)]
        experiment_d: Option<String>,
        #[arg(long)]
        lengths: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        automaton_out: Option<PathBuf>,
    },
    /// Render a graph, action window, or automaton as DOT.
    Export {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
}

impl From<crate::median::MedianError> for CliError {
    fn from(e: crate::median::MedianError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Q, CliError> {
    parse_q(s).ok_or_else(|| CliError::Input(format!("bad rational {s}")))
}

fn need_seed(seed: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = seed {
        return Ok(s);
    }
    if let Ok(v) = std::env::var("CUBEFIX_SEED") {
        if let Ok(s) = v.parse() {
            return Ok(s);
        }
    }
    Err(CliError::Input(
        "sampling needs --seed or CUBEFIX_SEED".into(),
    ))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Runs a parsed command; the result is the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Validate { file, out } => {
            let raw = io::load_graph(&file)?;
            let g = MedianGraph::validate(&raw)?;
            let rep = report::ValidateReport {
                ok: true,
                vertices: g.vertex_count(),
                edges: g.edges.len(),
                wall_classes: g.class_count(),
                dimension: g.dimension(),
                distance_matches_separators: g.distances_match_separators(),
            };
            emit(&to_json(&rep), &out)?;
            Ok(if rep.distance_matches_separators {
                0
            } else {
                1
            })
        }
        Cmd::Partition {
            window,
            word,
            hyperplane,
            out,
        } => {
            let (act, _) = window.load()?;
            let x = act.basepoint;
            let w = parse_word(&word, &act.alphabet)
                .ok_or_else(|| CliError::Input(format!("bad word {word}")))?;
            let (pa, pb) = hyperplane
                .split_once('~')
                .ok_or_else(|| CliError::Input("wall must be given as u~v".into()))?;
            let va = act
                .complex
                .parse_vertex(pa.trim())
                .ok_or_else(|| CliError::Input(format!("unknown vertex {pa}")))?;
            let vb = act
                .complex
                .parse_vertex(pb.trim())
                .ok_or_else(|| CliError::Input(format!("unknown vertex {pb}")))?;
            let wall = act
                .complex
                .wall_of_edge(va, vb)
                .ok_or_else(|| CliError::Input("not an edge".into()))?;
            let p =
                partition_full(&act, x, &w, wall).map_err(|e| CliError::Input(e.to_string()))?;
            let name = |ls: &[Letter]| -> Vec<String> {
                ls.iter()
                    .map(|&l| act.alphabet.name(l).to_string())
                    .collect()
            };
            let rep = report::PartitionReport {
                word: w.display_compact(&act.alphabet),
                wall: io::wall_display(&act, wall),
                forward: name(&p.forward),
                backward: name(&p.backward),
                visibly_parallel: name(&p.par_visible),
                crossing_parallel: name(&p.par_crossing),
                disjoint_parallel: name(&p.par_disjoint),
                fixed_wall_flags: name(&p.fixed_wall_flags),
            };
            emit(&to_json(&rep), &out)?;
            Ok(0)
        }
        Cmd::Build {
            window,
            dim,
            eps1,
            out,
            automaton_out,
        } => {
            let (act, desc) = window.load()?;
            let eps1 = parse_rational(&eps1)?;
            let params = PipelineParams {
                dim,
                eps1,
                c1: q(1, 3),
                check_len: 8,
                experiment: None,
            };
            let (rep, auto) =
                run_pipeline(&act, &desc, &params).map_err(|e| CliError::Input(e.to_string()))?;
            if let Some(path) = automaton_out {
                let file = io::automaton_to_file(&auto, Some(&act));
                std::fs::write(&path, to_json(&file))?;
            }
            emit(&to_json(&rep), &out)?;
            Ok(if rep.checks_passed { 0 } else { 1 })
        }
        Cmd::Verify {
            automaton,
            window,
            max_len,
            out,
        } => {
            let (act, _) = window.load()?;
            let text = std::fs::read_to_string(&automaton)?;
            let file: io::AutomatonFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Io(io::IoError::Format(e.to_string())))?;
            let auto = io::automaton_from_file(&file, Some(&act))?;
            let x = act.basepoint;
            let prog = verify_progressing(&auto, &act, x, max_len);
            let words = verify_accepted_words_move(&auto, &act, x, max_len.unwrap_or(8));
            let rep = report::VerifyReport {
                progressing_ok: prog.is_ok(),
                words_move_ok: words.is_ok(),
                max_len: max_len.unwrap_or(auto.vertex_count() + 1),
                detail: prog
                    .err()
                    .map(|e| e.to_string())
                    .or(words.err().map(|e| e.to_string())),
            };
            let code = if rep.progressing_ok && rep.words_move_ok {
                0
            } else {
                1
            };
            emit(&to_json(&rep), &out)?;
            Ok(code)
        }
        Cmd::Dtable { eps0, n, eps1, out } => {
            let eps0 = parse_rational(&eps0)?;
            let table =
                BranchingTable::new(&eps0, n).map_err(|e| CliError::Input(e.to_string()))?;
            let entries: Vec<Vec<String>> = (1..=n)
                .map(|i| (0..i).map(|j| show_q(table.entry(i, j))).collect())
                .collect();
            let thresholds: Vec<String> = (1..=n)
                .map(|m| eps_threshold(m).map(|t| show_q(&t)).unwrap_or_default())
                .collect();
            let gamma = match eps1 {
                Some(e1) => {
                    let e1 = parse_rational(&e1)?;
                    let sched =
                        growth_schedule(n, &e1).map_err(|e| CliError::Input(e.to_string()))?;
                    Some(sched.gamma.iter().map(show_q).collect())
                }
                None => None,
            };
            let rep = report::DTableReport {
                eps0: show_q(&eps0),
                n,
                entries,
                monotone: table.is_monotone(),
                eps_threshold: thresholds,
                gamma,
            };
            emit(&to_json(&rep), &out)?;
            Ok(0)
        }
        Cmd::Sample {
            k,
            d,
            len,
            model,
            unique,
            seed,
            format,
            out,
        } => {
            let d = parse_rational(&d)?;
            let seed = need_seed(seed)?;
            let mut set = match model.as_str() {
                "plain" => sample_plain(k, &d, len, seed),
                "reduced" => sample_reduced(k, &d, len, seed),
                other => return Err(CliError::Input(format!("unknown model {other}"))),
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            if unique {
                crate::randgrp::make_unique(&mut set)
                    .map_err(|e| CliError::Input(e.to_string()))?;
            }
            let alpha = Alphabet::base(k);
            let words: Vec<String> = set
                .relators
                .iter()
                .map(|w| w.display_compact(&alpha))
                .collect();
            match format.as_str() {
                "text" => emit(&words.join("\n"), &out)?,
                _ => {
                    let rep = report::SampleReport {
                        k,
                        density: show_q(&d),
                        length: len,
                        model: model.clone(),
                        seed,
                        count: words.len(),
                        relators: words,
                    };
                    emit(&to_json(&rep), &out)?;
                }
            }
            Ok(0)
        }
        Cmd::Experiment {
            automaton,
            d,
            lengths,
            trials,
            seed,
            out,
        } => {
            let text = std::fs::read_to_string(&automaton)?;
            let file: io::AutomatonFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Io(io::IoError::Format(e.to_string())))?;
            let auto = io::automaton_from_file(&file, None)?;
            let d = parse_rational(&d)?;
            let seed = need_seed(seed)?;
            let lengths: Vec<usize> = lengths
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| CliError::Input("bad lengths".into()))
                })
                .collect::<Result<_, _>>()?;
            let rep = intersection_experiment(&auto, &d, &lengths, trials, seed)
                .map_err(|e| CliError::Input(e.to_string()))?;
            emit(&to_json(&rep), &out)?;
            Ok(0)
        }
        Cmd::Smallcanc { relators, p, out } => {
            let alpha = Alphabet::base(26);
            let words = io::load_relators(&relators, &alpha)?;
            let rep = small_cancellation_check(&words, &alpha, p)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let code = if rep.passes { 0 } else { 1 };
            emit(&to_json(&rep), &out)?;
            Ok(code)
        }
        Cmd::Rips {
            base,
            pool,
            p,
            n,
            check,
            out,
        } => {
            let alpha = Alphabet::base(26);
            let base_words = io::load_relators(&base, &alpha)?;
            let pool_words = io::load_relators(&pool, &alpha)?;
            let infer_rank = |ws: &[crate::Word]| {
                ws.iter()
                    .flat_map(|w| w.letters().iter())
                    .map(|l| l.generator() + 1)
                    .max()
                    .unwrap_or(1)
            };
            let base_rank = infer_rank(&base_words);
            let pool_rank = infer_rank(&pool_words);
            let pool_len = pool_words.first().map(|w| w.len()).unwrap_or(0);
            if pool_words.iter().any(|w| w.len() != pool_len) {
                return Err(CliError::Input("pool relators must share a length".into()));
            }
            let base_pres = Presentation {
                generator_count: base_rank,
                relators: base_words,
                origin: Origin::Manual,
            };
            let pool_set = RelatorSet {
                k: pool_rank,
                density: Q::zero(),
                length: pool_len,
                model: Model::Reduced,
                seed: 0,
                relators: pool_words,
            };
            let pres = rips_assemble(&base_pres, p, &pool_set)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let out_alpha = pres.alphabet();
            let sc = if check {
                Some(
                    small_cancellation_check(&pres.relators, &out_alpha, p)
                        .map_err(|e| CliError::Input(e.to_string()))?,
                )
            } else {
                None
            };
            if let Some(n) = n {
                let threshold =
                    reduced_rank_threshold(n).map_err(|e| CliError::Input(e.to_string()))?;
                if pool_rank < threshold {
                    eprintln!(
                        "note: pool rank {pool_rank} is below the dimension-{n} threshold {threshold}"
                    );
                }
            }
            let rep = report::RipsReport {
                generators: pres.generator_count,
                relators: pres.relators.len(),
                base_relators: base_pres.relators.len(),
                conjugation_relators: base_rank * pool_rank,
                smallcanc: sc.clone(),
                words: pres
                    .relators
                    .iter()
                    .map(|w| w.display_compact(&out_alpha))
                    .collect(),
            };
            let code = match &sc {
                Some(r) if !r.passes => 1,
                _ => 0,
            };
            emit(&to_json(&rep), &out)?;
            Ok(code)
        }
        Cmd::Pipeline {
            window,
            dim,
            eps1,
            c1,
            check_len,
            experiment_d,
            lengths,
            trials,
            seed,
            out,
            automaton_out,
        } => {
            let (act, desc) = window.load()?;
            let eps1 = parse_rational(&eps1)?;
            let c1 = parse_rational(&c1)?;
            let experiment = match experiment_d {
                Some(d) => {
                    let d = parse_rational(&d)?;
                    let lengths: Vec<usize> = lengths
                        .as_deref()
                        .unwrap_or("10,20,40")
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse()
                                .map_err(|_| CliError::Input("bad lengths".into()))
                        })
                        .collect::<Result<_, _>>()?;
                    Some((d, lengths, trials, need_seed(seed)?))
                }
                None => None,
            };
            let params = PipelineParams {
                dim,
                eps1,
                c1,
                check_len,
                experiment,
            };
            let (rep, auto) =
                run_pipeline(&act, &desc, &params).map_err(|e| CliError::Input(e.to_string()))?;
            if let Some(path) = automaton_out {
                let file = io::automaton_to_file(&auto, Some(&act));
                std::fs::write(&path, to_json(&file))?;
            }
            let code = if rep.checks_passed { 0 } else { 1 };
            emit(&to_json(&rep), &out)?;
            Ok(code)
        }
        Cmd::Export {
            graph,
            automaton,
            window,
            out,
        } => {
            let dot = if let Some(path) = graph {
                let raw = io::load_graph(&path)?;
                let g = MedianGraph::validate(&raw)?;
                io::graph_to_dot(&g)
            } else if let Some(path) = automaton {
                let text = std::fs::read_to_string(&path)?;
                let file: io::AutomatonFile = serde_json::from_str(&text)
                    .map_err(|e| CliError::Io(io::IoError::Format(e.to_string())))?;
                io::automaton_file_to_dot(&file)
            } else if window.action.is_some() {
                let (act, _) = window.load()?;
                let g = act.complex.explicit().ok_or_else(|| {
                    CliError::Input("only explicit actions export as graphs".into())
                })?;
                io::graph_to_dot(g)
            } else {
                return Err(CliError::Input(
                    "export needs --graph, --automaton, or --action".into(),
                ));
            };
            emit(&dot, &out)?;
            Ok(0)
        }
    }
}

pub struct PipelineParams {
    pub dim: usize,
    pub eps1: Q,
    pub c1: Q,
    pub check_len: usize,
    pub experiment: Option<(Q, Vec<usize>, usize, u64)>,
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{0}")]
    Failed(String),
}

/// Window -> (subdivide) -> basepoint -> fix-set branch or builder ->
/// verification -> shape certification -> optional experiment.
pub fn run_pipeline(
    action: &CubeAction,
    desc: &str,
    params: &PipelineParams,
) -> Result<(report::PipelineReport, Automaton), PipelineError> {
    let fail = |e: String| PipelineError::Failed(e);
    // explicit total actions: clear inversions, minimize displacement
    let owned;
    let (act, subdivided) = if action.complex.explicit().is_some() && action.is_total() {
        let has_inversion = action
            .detect_inversions()
            .map_err(|e| fail(e.to_string()))?
            .is_some();
        if has_inversion {
            owned = action.subdivide().map_err(|e| fail(e.to_string()))?;
            (&owned, true)
        } else {
            (action, false)
        }
    } else {
        (action, false)
    };
    let x = if act.complex.explicit().is_some() && act.is_total() {
        act.minimize_displacement()
            .map_err(|e| fail(e.to_string()))?
    } else {
        act.basepoint
    };
    let size = act.alphabet.size();
    let fix = act.fix_set(x);
    let sched = growth_schedule(params.dim, &params.eps1).map_err(|e| fail(e.to_string()))?;
    let gamma_n = sched.gamma_at(params.dim).clone();

    use num_bigint::BigInt;
    let fix_large =
        BigInt::from(fix.len()) * params.c1.denom() >= params.c1.numer() * BigInt::from(size);

    let (auto, branch, trace): (Automaton, String, Option<BuildTrace>) = if fix_large {
        let auto = fixset_automaton(act, x).map_err(|e| fail(e.to_string()))?;
        (auto, "fixset".into(), None)
    } else {
        let letters: Vec<Letter> = act
            .alphabet
            .letters()
            .filter(|l| !fix.contains(l))
            .collect();
        let (auto, trace) = build_automaton_over(act, x, letters, params.dim, &params.eps1)
            .map_err(|e| fail(e.to_string()))?;
        (auto, "builder".into(), Some(trace))
    };

    // verification
    let progressing_ok = if branch == "builder" {
        verify_progressing(&auto, act, x, None).is_ok()
    } else {
        true
    };
    let words_move_ok = verify_accepted_words_move(&auto, act, x, params.check_len).is_ok();
    let growth_lambda = if branch == "fixset" {
        params.c1.clone()
    } else {
        gamma_n.clone()
    };
    let growth = check_lambda_large(&auto, &growth_lambda);
    let shape = shape_check(&auto, params.dim, &params.c1, &gamma_n);
    let shape_name = match shape.class {
        ShapeClass::Form1 => "form1",
        ShapeClass::Form2 => "form2",
        ShapeClass::Neither => "neither",
    };
    let shape_ok = match branch.as_str() {
        "fixset" => shape.class == ShapeClass::Form1,
        _ => shape.class == ShapeClass::Form2,
    };
    let counts: Vec<(usize, String)> = (0..=6)
        .map(|l| (l, auto.count_accepted(l).to_string()))
        .collect();
    let experiment = match &params.experiment {
        Some((d, lengths, trials, seed)) => Some(
            intersection_experiment(&auto, d, lengths, *trials, *seed)
                .map_err(|e| fail(e.to_string()))?,
        ),
        None => None,
    };
    let checks_passed =
        progressing_ok && words_move_ok && growth.is_ok() && shape_ok && shape.vertex_bound_ok;
    let rep = report::PipelineReport {
        window: desc.to_string(),
        basepoint: act.complex.display_vertex(x),
        subdivided,
        fix_set: fix
            .iter()
            .map(|&l| act.alphabet.name(l).to_string())
            .collect(),
        branch,
        automaton: report::AutomatonSummary {
            vertices: auto.vertex_count(),
            edges: auto.edge_count(),
            checkpoints: auto.checkpoints.len(),
            alphabet: auto.alphabet.size(),
            active_alphabet: auto.effective_alphabet_size(),
        },
        shape: shape_name.to_string(),
        shape_vertex_bound_ok: shape.vertex_bound_ok,
        growth_lambda: show_q(&growth_lambda),
        growth_horizon: growth.as_ref().map(|c| c.horizon).unwrap_or(0),
        progressing_ok,
        words_move_ok,
        counts,
        trace,
        experiment,
        checks_passed,
    };
    Ok((rep, auto))
}
