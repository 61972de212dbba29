//! Command-line surface over the core library: deterministic text and
//! JSON output, no floats anywhere, all numbers as decimal strings.
//!
//! Exit codes: 0 on success, 1 on a domain error (bad weight, inadmissible
//! rank, degree bound, …), 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use inflie_core::branching::Restrictor;
use inflie_core::char_oracle::{character, decompose, dim, FormalCharacter, RankedWeight};
use inflie_core::dlim_desc::{
    dual_integrable_verdict, spinor_equiv, window_pairs, DirectSystem, SpinorKind,
    SpinorSequence,
};
use inflie_core::duals_inj::{
    card_add, card_mul, family_closure_check, inj_profile, Cardinality, ClosureVerdict,
    FamilyDescriptor, LoewyProfile,
};
use inflie_core::tensor_calc::{tensor_factors, tpq_factors, tpq_loewy, DEFAULT_DEGREE_BOUND};
use inflie_core::theta_order::{
    chain_length, ext1_dim, ext1_nonzero, leq, ChainLength, Probe, ThetaPoset,
};
use inflie_core::weights::{enumerate_theta, Family, ThetaWeight};
use inflie_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "inflie",
    version,
    about = "Exact stable invariants of sl(∞)/o(∞)/sp(∞) tensor modules",
    disable_help_subcommand = true
)]
struct Cli {
    /// Weight family: sl, o or sp
    #[arg(long, global = true, value_name = "FAM")]
    family: Option<String>,

    /// Emit canonical JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Probe window: a width for order/chain/theta-k/ext1 (default 1), a
    /// rank range a..b for dlim-verdict (default 3..8)
    #[arg(long, global = true, value_name = "W")]
    window: Option<String>,

    /// Extra margin added to every stable oracle/probe rank
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    stable_margin: u32,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all labels of norm at most K in canonical order
    Theta { k: u32 },
    /// Total box count |λ| of a label
    Norm {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Label of the unique simple submodule of the dual
    Star {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Dimension of the irreducible with the given finite-rank weight
    Dim {
        #[arg(allow_hyphen_values = true)]
        coords: String,
    },
    /// Exact weight multiplicities of the irreducible
    Char {
        #[arg(allow_hyphen_values = true)]
        coords: String,
    },
    /// Restriction of the irreducible one rank down
    Branch {
        #[arg(allow_hyphen_values = true)]
        coords: String,
    },
    /// Decompose the product of the given irreducible characters (all at
    /// one rank) back into irreducibles
    Decompose {
        #[arg(allow_hyphen_values = true, required = true)]
        coords: Vec<String>,
    },
    /// Multiplicity of V_μ at rank I inside V_λ restricted from rank J
    RestrictMult {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        i: u32,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        j: u32,
    },
    /// Whether μ ≤ λ in the order on Θ
    Order {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        /// Emit the Hasse diagram of Θ up to max(|μ|,|λ|) in DOT format
        #[arg(long)]
        dot: bool,
    },
    /// Number of elements of a maximal chain from μ up to λ
    Chain {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// The layer label set Θᵏ(λ)
    ThetaK {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        k: u32,
    },
    /// Ext¹(V_μ, V_λ): nonvanishing and symbolic dimension
    Ext1 {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Composition factors and Loewy layers of T^{p,q}
    Tpq { p: u32, q: u32 },
    /// Stable composition factors of V_λ ⊗ V_μ
    Tensor {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Loewy profile of the injective hull I_λ
    InjProfile {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Loewy length of an injective hull (--inj λ) or of T^{p,q} (--tpq P Q)
    Loewy(LoewyArgs),
    /// Uniform lindᵏ level of a family of simple modules, or `unbounded`
    ClosureCheck {
        /// Simple-module labels, each contributing its norm as the level
        #[arg(allow_hyphen_values = true)]
        weights: Vec<String>,
        /// Declare an infinite family with unbounded norms (failure verdict)
        #[arg(long, conflicts_with = "weights")]
        unbounded: bool,
        /// Declare an infinite family with the given uniform level bound
        #[arg(long, conflicts_with_all = ["weights", "unbounded"], value_name = "K")]
        bound: Option<u32>,
    },
    /// Dual-integrability verdict for a direct system over a rank window
    DlimVerdict {
        /// stable, sympower or spinor
        #[arg(long, value_name = "KIND")]
        kind: String,
        /// Stable label (for --kind stable)
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        label: Option<String>,
        /// Spinor sequence prefix:tail over {1,2} (for --kind spinor)
        #[arg(long, value_name = "SEQ")]
        t: Option<String>,
    },
    /// Whether two spinor sequences define the same limit module
    SpinorEquiv {
        #[arg(long, value_name = "SEQ")]
        t: String,
        #[arg(long, value_name = "SEQ")]
        tprime: String,
    },
    /// Exact symbolic cardinal arithmetic
    Card {
        /// add or mul
        op: String,
        a: String,
        b: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LoewyArgs {
    /// Injective hull I_λ
    #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
    inj: Option<String>,
    /// T^{p,q}
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    tpq: Option<Vec<u32>>,
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Runs the CLI against explicit streams; returns the process exit code.
pub fn run<O: Write, E: Write>(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    out: &mut O,
    err: &mut E,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
    }
}

fn family_of(cli: &Cli) -> Result<Family, Failure> {
    match &cli.family {
        Some(s) => s
            .parse::<Family>()
            .map_err(|e| Failure::Usage(e.to_string())),
        None => Err(Failure::Usage(
            "this command needs --family sl|o|sp".into(),
        )),
    }
}

fn probe_of(cli: &Cli) -> Result<Probe, Failure> {
    let window = match &cli.window {
        None => 1,
        Some(s) => s.parse::<u32>().map_err(|_| {
            Failure::Usage(format!(
                "--window for order probes must be a width, got {s:?}"
            ))
        })?,
    };
    if window == 0 {
        return Err(Failure::Usage("--window must be at least 1".into()));
    }
    Ok(Probe {
        stable_margin: cli.stable_margin,
        window,
    })
}

fn dlim_window(cli: &Cli) -> Result<Vec<(u32, u32)>, Failure> {
    let range = cli.window.as_deref().unwrap_or("3..8");
    let (a, b) = range
        .split_once("..")
        .ok_or_else(|| Failure::Usage(format!("--window for dlim-verdict is a..b, got {range:?}")))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("bad window start {a:?}")))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("bad window end {b:?}")))?;
    if a == 0 || b <= a {
        return Err(Failure::Usage(format!(
            "window must satisfy 0 < a < b, got {a}..{b}"
        )));
    }
    Ok(window_pairs(a, b))
}

fn theta_arg(family: Family, s: &str) -> Result<ThetaWeight, Failure> {
    ThetaWeight::parse(family, s).map_err(Failure::from)
}

fn ranked_arg(family: Family, s: &str) -> Result<RankedWeight, Failure> {
    RankedWeight::parse(family, s).map_err(Failure::from)
}

fn spinor_seq(s: &str) -> Result<SpinorSequence, Failure> {
    let (prefix_str, tail_str) = match s.split_once(':') {
        Some((p, t)) => (p.trim(), t.trim()),
        None => ("", s.trim()),
    };
    let kind = |tok: &str| -> Result<SpinorKind, Failure> {
        match tok {
            "1" => Ok(SpinorKind::S1),
            "2" => Ok(SpinorKind::S2),
            other => Err(Failure::Usage(format!(
                "spinor sequence entries are 1 or 2, got {other:?}"
            ))),
        }
    };
    let mut prefix = Vec::new();
    if !prefix_str.is_empty() {
        for tok in prefix_str.split(',') {
            prefix.push(kind(tok.trim())?);
        }
    }
    Ok(SpinorSequence {
        prefix,
        tail: kind(tail_str)?,
    })
}

fn emit(out: &mut impl Write, value: &Value) {
    let _ = writeln!(out, "{}", serde_json::to_string(value).expect("valid json"));
}

fn profile_json(prof: &LoewyProfile) -> Value {
    let mut layers = Vec::new();
    for (idx, layer) in prof.layers().iter().enumerate() {
        for (w, m) in layer {
            layers.push(json!({
                "layer": idx.to_string(),
                "mult": m.to_string(),
                "weight": w.to_string(),
            }));
        }
    }
    json!({
        "family": prof.family().name(),
        "layers": layers,
        "loewy_length": prof.loewy_length().to_string(),
    })
}

fn print_profile(out: &mut impl Write, prof: &LoewyProfile) {
    for (idx, layer) in prof.layers().iter().enumerate() {
        let entries: Vec<String> = layer
            .iter()
            .map(|(w, m)| format!("{w} : {m}"))
            .collect();
        let _ = writeln!(out, "layer {idx}: {}", entries.join(", "));
    }
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> CmdResult {
    match &cli.cmd {
        Cmd::Theta { k } => {
            let family = family_of(cli)?;
            let labels = enumerate_theta(family, *k);
            if cli.json {
                let shown: Vec<String> = labels.iter().map(|w| w.to_string()).collect();
                emit(
                    out,
                    &json!({
                        "family": family.name(),
                        "labels": shown,
                        "norm_bound": k.to_string(),
                    }),
                );
            } else {
                for w in labels {
                    let _ = writeln!(out, "{w}");
                }
            }
            Ok(())
        }
        Cmd::Norm { weight } => {
            let family = family_of(cli)?;
            let w = theta_arg(family, weight)?;
            if cli.json {
                emit(
                    out,
                    &json!({ "norm": w.norm().to_string(), "weight": w.to_string() }),
                );
            } else {
                let _ = writeln!(out, "{}", w.norm());
            }
            Ok(())
        }
        Cmd::Star { weight } => {
            let family = family_of(cli)?;
            let w = theta_arg(family, weight)?.star();
            if cli.json {
                emit(out, &json!({ "star": w.to_string() }));
            } else {
                let _ = writeln!(out, "{w}");
            }
            Ok(())
        }
        Cmd::Dim { coords } => {
            let family = family_of(cli)?;
            let w = ranked_arg(family, coords)?;
            let d = dim(&w);
            if cli.json {
                emit(
                    out,
                    &json!({ "dim": d.to_string(), "rank": w.rank().to_string() }),
                );
            } else {
                let _ = writeln!(out, "{d}");
            }
            Ok(())
        }
        Cmd::Char { coords } => {
            let family = family_of(cli)?;
            let w = ranked_arg(family, coords)?;
            let c = character(&w);
            if cli.json {
                let terms: Vec<Value> = c
                    .terms()
                    .iter()
                    .map(|(k, m)| {
                        let exp: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                        json!({ "exp": exp.join(","), "mult": m.to_string() })
                    })
                    .collect();
                emit(
                    out,
                    &json!({
                        "mass": c.mass().to_string(),
                        "rank": c.rank().to_string(),
                        "terms": terms,
                    }),
                );
            } else {
                for (k, m) in c.terms() {
                    let exp: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "{} : {m}", exp.join(","));
                }
            }
            Ok(())
        }
        Cmd::Branch { coords } => {
            let family = family_of(cli)?;
            let w = ranked_arg(family, coords)?;
            let restriction = inflie_core::branching::branch(&w)?;
            if cli.json {
                let factors: Vec<Value> = restriction
                    .iter()
                    .map(|(u, m)| json!({ "mult": m.to_string(), "weight": u.to_string() }))
                    .collect();
                emit(out, &json!({ "factors": factors }));
            } else {
                for (u, m) in &restriction {
                    let _ = writeln!(out, "{u} : {m}");
                }
            }
            Ok(())
        }
        Cmd::Decompose { coords } => {
            let family = family_of(cli)?;
            let weights: Vec<RankedWeight> = coords
                .iter()
                .map(|s| ranked_arg(family, s))
                .collect::<Result<_, _>>()?;
            let rank = weights[0].rank();
            let mut product = FormalCharacter::unit(family, rank);
            for w in &weights {
                product = product.mul(&character(w))?;
            }
            let factors = decompose(&product)?;
            if cli.json {
                let rows: Vec<Value> = factors
                    .iter()
                    .map(|(w, m)| json!({ "mult": m.to_string(), "weight": w.to_string() }))
                    .collect();
                emit(out, &json!({ "factors": rows, "mass": product.mass().to_string() }));
            } else {
                for (w, m) in &factors {
                    let _ = writeln!(out, "{w} : {m}");
                }
            }
            Ok(())
        }
        Cmd::RestrictMult { mu, i, lambda, j } => {
            let family = family_of(cli)?;
            let mu = theta_arg(family, mu)?;
            let lambda = theta_arg(family, lambda)?;
            let m = Restrictor::new().restrict_mult(&mu, *i, &lambda, *j)?;
            if cli.json {
                emit(out, &json!({ "mult": m.to_string() }));
            } else {
                let _ = writeln!(out, "{m}");
            }
            Ok(())
        }
        Cmd::Order { mu, lambda, dot } => {
            let family = family_of(cli)?;
            let mu = theta_arg(family, mu)?;
            let lambda = theta_arg(family, lambda)?;
            let probe = probe_of(cli)?;
            if *dot {
                let poset =
                    ThetaPoset::build(family, mu.norm().max(lambda.norm()), &probe)?;
                let _ = write!(out, "{}", poset.hasse_dot());
                return Ok(());
            }
            let verdict = leq(&mu, &lambda, &probe)?;
            if cli.json {
                emit(
                    out,
                    &json!({
                        "lambda": lambda.to_string(),
                        "leq": verdict,
                        "mu": mu.to_string(),
                    }),
                );
            } else {
                let _ = writeln!(out, "{verdict}");
            }
            Ok(())
        }
        Cmd::Chain { lambda, mu } => {
            let family = family_of(cli)?;
            let lambda = theta_arg(family, lambda)?;
            let mu = theta_arg(family, mu)?;
            let len = chain_length(&lambda, &mu, &probe_of(cli)?)?;
            if cli.json {
                let value = match len {
                    ChainLength::Length(k) => json!({ "chain_length": k.to_string() }),
                    ChainLength::Incomparable => json!({ "chain_length": "incomparable" }),
                };
                emit(out, &value);
            } else {
                let _ = writeln!(out, "{len}");
            }
            Ok(())
        }
        Cmd::ThetaK { lambda, k } => {
            let family = family_of(cli)?;
            let lambda = theta_arg(family, lambda)?;
            let labels = inflie_core::theta_order::theta_k(&lambda, *k, &probe_of(cli)?)?;
            if cli.json {
                let shown: Vec<String> = labels.iter().map(|w| w.to_string()).collect();
                emit(
                    out,
                    &json!({
                        "k": k.to_string(),
                        "labels": shown,
                        "lambda": lambda.to_string(),
                    }),
                );
            } else {
                for w in labels {
                    let _ = writeln!(out, "{w}");
                }
            }
            Ok(())
        }
        Cmd::Ext1 { mu, lambda } => {
            let family = family_of(cli)?;
            let mu = theta_arg(family, mu)?;
            let lambda = theta_arg(family, lambda)?;
            let probe = probe_of(cli)?;
            let nonzero = ext1_nonzero(&mu, &lambda, &probe)?;
            let d = ext1_dim(&mu, &lambda, &probe)?;
            if cli.json {
                emit(out, &json!({ "dim": d.to_string(), "nonzero": nonzero }));
            } else {
                let _ = writeln!(out, "{} {d}", if nonzero { "nonzero" } else { "zero" });
            }
            Ok(())
        }
        Cmd::Tpq { p, q } => {
            let family = family_of(cli)?;
            // one oracle run; layers are (p+q-|μ|)/2 and the length is
            // checked against the closed formula exactly as tpq_loewy does
            let factors = tpq_factors(family, *p, *q, DEFAULT_DEGREE_BOUND, cli.stable_margin)?;
            let layer_of = |w: &ThetaWeight| (*p + *q - w.norm()) / 2;
            let max_layer = factors.iter().map(|(w, _)| layer_of(w)).max().unwrap_or(0);
            let formula = match family {
                Family::Sl => (*p).min(*q) + 1,
                _ => (*p + *q) / 2 + 1,
            };
            if max_layer + 1 != formula {
                return Err(Failure::Domain(format!(
                    "internal inconsistency: Loewy layers give {} but the formula gives {formula}",
                    max_layer + 1
                )));
            }
            if cli.json {
                let rows: Vec<Value> = factors
                    .iter()
                    .map(|(w, m)| {
                        json!({
                            "layer": layer_of(w).to_string(),
                            "mult": m.to_string(),
                            "weight": w.to_string(),
                        })
                    })
                    .collect();
                emit(
                    out,
                    &json!({
                        "factors": rows,
                        "family": family.name(),
                        "loewy_length": formula.to_string(),
                        "p": p.to_string(),
                        "q": q.to_string(),
                    }),
                );
            } else {
                for (w, m) in &factors {
                    let _ = writeln!(out, "{w} : {m} : layer {}", layer_of(w));
                }
                let _ = writeln!(out, "loewy length {formula}");
            }
            Ok(())
        }
        Cmd::Tensor { lambda, mu } => {
            let family = family_of(cli)?;
            let lambda = theta_arg(family, lambda)?;
            let mu = theta_arg(family, mu)?;
            let factors =
                tensor_factors(&lambda, &mu, DEFAULT_DEGREE_BOUND, cli.stable_margin)?;
            if cli.json {
                let rows: Vec<Value> = factors
                    .iter()
                    .map(|(w, m)| json!({ "mult": m.to_string(), "weight": w.to_string() }))
                    .collect();
                emit(out, &json!({ "factors": rows }));
            } else {
                for (w, m) in &factors {
                    let _ = writeln!(out, "{w} : {m}");
                }
            }
            Ok(())
        }
        Cmd::InjProfile { lambda } => {
            let family = family_of(cli)?;
            let lambda = theta_arg(family, lambda)?;
            let prof = inj_profile(&lambda, &probe_of(cli)?)?;
            if cli.json {
                emit(out, &profile_json(&prof));
            } else {
                print_profile(out, &prof);
            }
            Ok(())
        }
        Cmd::Loewy(args) => {
            let family = family_of(cli)?;
            let length = if let Some(weight) = &args.inj {
                let lambda = theta_arg(family, weight)?;
                inj_profile(&lambda, &probe_of(cli)?)?.loewy_length()
            } else {
                let pq = args.tpq.as_ref().expect("group is required");
                tpq_loewy(family, pq[0], pq[1], DEFAULT_DEGREE_BOUND, cli.stable_margin)?
            };
            if cli.json {
                emit(out, &json!({ "loewy_length": length.to_string() }));
            } else {
                let _ = writeln!(out, "{length}");
            }
            Ok(())
        }
        Cmd::ClosureCheck {
            weights,
            unbounded,
            bound,
        } => {
            let family = family_of(cli)?;
            let desc = if *unbounded {
                FamilyDescriptor::UnboundedInfinite { family }
            } else if let Some(k) = bound {
                FamilyDescriptor::BoundedInfinite {
                    family,
                    level_bound: *k,
                }
            } else {
                let mut profiles = Vec::new();
                for s in weights {
                    let w = theta_arg(family, s)?;
                    let mut layer = std::collections::BTreeMap::new();
                    layer.insert(w, Cardinality::finite(1u32));
                    profiles.push(LoewyProfile::semisimple(family, layer)?);
                }
                FamilyDescriptor::Finite(profiles)
            };
            let verdict = family_closure_check(&desc)?;
            if cli.json {
                let value = match verdict {
                    ClosureVerdict::Level(k) => json!({ "level": k.to_string() }),
                    ClosureVerdict::Unbounded => json!({ "level": "unbounded" }),
                };
                emit(out, &value);
            } else {
                let _ = writeln!(out, "{verdict}");
            }
            Ok(())
        }
        Cmd::DlimVerdict { kind, label, t } => {
            let desc = match kind.to_ascii_lowercase().as_str() {
                "stable" => {
                    let family = family_of(cli)?;
                    let weight = label.as_ref().ok_or_else(|| {
                        Failure::Usage("--kind stable needs --label <weight>".into())
                    })?;
                    DirectSystem::Stable(theta_arg(family, weight)?)
                }
                "sympower" => DirectSystem::SymPower,
                "spinor" => {
                    let seq = match t {
                        Some(s) => spinor_seq(s)?,
                        None => SpinorSequence::constant(SpinorKind::S1),
                    };
                    DirectSystem::Spinor(seq)
                }
                other => {
                    return Err(Failure::Usage(format!(
                        "--kind must be stable, sympower or spinor, got {other:?}"
                    )))
                }
            };
            let verdict = dual_integrable_verdict(&desc, &dlim_window(cli)?)?;
            if cli.json {
                emit(out, &json!({ "verdict": verdict.to_string() }));
            } else {
                let _ = writeln!(out, "{verdict}");
            }
            Ok(())
        }
        Cmd::SpinorEquiv { t, tprime } => {
            let a = spinor_seq(t)?;
            let b = spinor_seq(tprime)?;
            let equal = spinor_equiv(&a, &b);
            if cli.json {
                emit(out, &json!({ "equivalent": equal }));
            } else {
                let _ = writeln!(out, "{equal}");
            }
            Ok(())
        }
        Cmd::Card { op, a, b } => {
            let a: Cardinality = a.parse()?;
            let b: Cardinality = b.parse()?;
            let result = match op.to_ascii_lowercase().as_str() {
                "add" => card_add(&a, &b),
                "mul" => card_mul(&a, &b),
                other => {
                    return Err(Failure::Usage(format!(
                        "card op must be add or mul, got {other:?}"
                    )))
                }
            };
            if cli.json {
                emit(out, &json!({ "card": result.to_string() }));
            } else {
                let _ = writeln!(out, "{result}");
            }
            Ok(())
        }
    }
}

