//! The `twistk` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::bredon::{bredon_cochains, coefficient_system_from_cocycle, integral_cohomology, GCWComplex};
use crate::cocycle::{class_order, h2_group, normalize_cocycle, CocycleTable};
use crate::error::Error;
use crate::group::{set_subgroup_bound, GroupTable, Subgroup};
use crate::io::*;
use crate::spectral::{e2_page, k_ranks_from_page, orbit_k};
use crate::twisted::{alpha_character_basis, verify_mackey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "twistk", version, about = "Twisted representation groups, Bredon cohomology and twisted K-ranks")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Repeat for more diagnostics on standard error.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Largest group order for subgroup enumeration (overrides TWISTK_MAX_GROUP).
    #[arg(long, global = true)]
    pub max_group: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    #[arg(long)]
    pub group: PathBuf,
}

#[derive(Debug, Args)]
pub struct TwistArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Defaults to the trivial twist.
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and check a group, and optionally a cocycle and a complex over it.
    Validate {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Second cohomology with Z/N coefficients.
    H2 {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        modulus: u64,
    },
    /// Normalize a cocycle to values in Z/n for its class order n.
    Normalize {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Irreducible twisted characters.
    Ralpha {
        #[command(flatten)]
        twist: TwistArgs,
    },
    /// Check restriction, conjugation and induction against the Mackey axioms.
    MackeyCheck {
        #[command(flatten)]
        twist: TwistArgs,
        /// Use every subgroup as ambient group, not only G.
        #[arg(long)]
        all_ambient: bool,
    },
    /// Twisted Bredon cohomology of a complex, optionally relative to a subcomplex.
    Bredon {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        complex: PathBuf,
        /// Comma-separated cell ids; without a value the subcomplex listed in the file is used.
        #[arg(long, num_args = 0..=1, value_delimiter = ',')]
        rel: Option<Vec<String>>,
    },
    /// E2 page and rational twisted K-ranks.
    Kranks {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        complex: PathBuf,
    },
    /// Twisted K-groups of the orbit G/H.
    Orbitk {
        #[command(flatten)]
        twist: TwistArgs,
        /// Comma-separated element indices of H.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Ctx {
    format: Format,
    verbose: u8,
    log: String,
}

impl Ctx {
    fn note(&mut self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            self.log.push_str(msg.as_ref());
            self.log.push('\n');
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Run<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_group(ctx: &mut Ctx, path: &Path) -> Run<Arc<GroupTable>> {
    let g = read_json::<GroupFile>(path)?.build()?;
    ctx.note(format!("group of order {}", g.order()));
    Ok(Arc::new(g))
}

fn load_twist(ctx: &mut Ctx, t: &TwistArgs) -> Run<(Arc<GroupTable>, CocycleTable)> {
    let g = load_group(ctx, &t.group)?;
    let alpha = match &t.cocycle {
        Some(p) => read_json::<CocycleFile>(p)?.build(&g)?,
        None => CocycleTable::trivial(&g, 1),
    };
    ctx.note(format!("cocycle modulo {}", alpha.modulus()));
    Ok((g, alpha))
}

fn load_complex(ctx: &mut Ctx, g: &Arc<GroupTable>, path: &Path) -> Run<GCWComplex> {
    let x = GCWComplex::new(g, &read_json::<ComplexSpec>(path)?)?;
    ctx.note(format!("complex of dimension {} with {} cell orbits", x.dimension(), x.cells().len()));
    Ok(x)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn line(fields: &[String]) -> String {
    fields.join("\t") + "\n"
}

fn ints<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn irreducibles_tsv(irr: &[IrreducibleEntry]) -> String {
    irr.iter()
        .map(|e| {
            let mut f = vec![e.degree.to_string()];
            f.extend(e.values.iter().map(ToString::to_string));
            line(&f)
        })
        .collect()
}

fn cocycle_tsv(c: &CocycleFile) -> String {
    c.entries.iter().map(|r| line(&ints(r))).collect()
}

fn execute(ctx: &mut Ctx, cmd: &Command) -> Run<String> {
    let tsv = ctx.format == Format::Tsv;
    Ok(match cmd {
        Command::Validate { twist, complex } => {
            let (g, alpha) = load_twist(ctx, twist)?;
            let cocycle = twist.cocycle.as_ref().map(|_| CocycleSummary { modulus: alpha.modulus(), class_order: class_order(&alpha) });
            let complex = match complex {
                Some(p) => {
                    let x = load_complex(ctx, &g, p)?;
                    let subcomplex = x.subcomplex().iter().map(|&i| x.cells()[i].id.clone()).collect();
                    Some(ComplexSummary { dimension: x.dimension(), cells: x.cells().len(), subcomplex })
                }
                None => None,
            };
            let r = ValidateReport {
                schema: SCHEMA_VERSION,
                group_order: g.order(),
                conjugacy_classes: g.conjugacy_classes().len(),
                cocycle,
                complex,
            };
            if tsv {
                let mut s = line(&["group_order".into(), r.group_order.to_string()]);
                s += &line(&["conjugacy_classes".into(), r.conjugacy_classes.to_string()]);
                if let Some(c) = &r.cocycle {
                    s += &line(&["modulus".into(), c.modulus.to_string()]);
                    s += &line(&["class_order".into(), c.class_order.to_string()]);
                }
                if let Some(c) = &r.complex {
                    s += &line(&["dimension".into(), c.dimension.to_string()]);
                    s += &line(&["cells".into(), c.cells.to_string()]);
                }
                s
            } else {
                json(&r)
            }
        }
        Command::H2 { group, modulus } => {
            let g = load_group(ctx, &group.group)?;
            if *modulus == 0 {
                return Err(Error::InvalidInput("modulus must be positive".into()).into());
            }
            let h = h2_group(&g, *modulus)?;
            let r = H2Report {
                schema: SCHEMA_VERSION,
                modulus: *modulus,
                order: h.order(),
                invariant_factors: h.invariant_factors.clone(),
                generators: h.generators.iter().map(CocycleFile::from_cocycle).collect(),
            };
            if tsv {
                let mut s = line(&["modulus".into(), modulus.to_string()]);
                s += &line(&["order".into(), r.order.to_string()]);
                let mut f = vec!["invariant_factors".to_string()];
                f.extend(ints(&r.invariant_factors));
                s += &line(&f);
                for (i, c) in r.generators.iter().enumerate() {
                    s += &line(&["generator".into(), i.to_string()]);
                    s += &cocycle_tsv(c);
                }
                s
            } else {
                json(&r)
            }
        }
        Command::Normalize { group, cocycle } => {
            let g = load_group(ctx, group)?;
            let alpha = read_json::<CocycleFile>(cocycle)?.build(&g)?;
            let n = normalize_cocycle(&alpha)?;
            let r = NormalizeReport {
                schema: SCHEMA_VERSION,
                class_order: n.cocycle.modulus(),
                cocycle: CocycleFile::from_cocycle(&n.cocycle),
                witness: n.witness,
            };
            if tsv {
                let mut s = line(&["class_order".into(), r.class_order.to_string()]);
                s += &cocycle_tsv(&r.cocycle);
                let mut f = vec!["witness".to_string(), r.witness.modulus.to_string()];
                f.extend(ints(&r.witness.values));
                s + &line(&f)
            } else {
                json(&r)
            }
        }
        Command::Ralpha { twist } => {
            let (_, alpha) = load_twist(ctx, twist)?;
            let basis = alpha_character_basis(&alpha)?;
            let r = CharacterReport {
                schema: SCHEMA_VERSION,
                modulus: alpha.modulus(),
                class_order: class_order(&alpha),
                irreducibles: irreducible_entries(&basis),
            };
            if tsv {
                irreducibles_tsv(&r.irreducibles)
            } else {
                json(&r)
            }
        }
        Command::MackeyCheck { twist, all_ambient } => {
            let (_, alpha) = load_twist(ctx, twist)?;
            let rep = verify_mackey(&alpha, *all_ambient)?;
            let r = MackeyCheckReport {
                schema: SCHEMA_VERSION,
                passed: rep.passed(),
                pairs_checked: rep.pairs.len(),
                failures: rep.pairs.into_iter().filter(|p| !p.passed()).collect(),
            };
            if tsv {
                line(&["passed".into(), r.passed.to_string()]) + &line(&["pairs_checked".into(), r.pairs_checked.to_string()])
            } else {
                json(&r)
            }
        }
        Command::Bredon { twist, complex, rel } => {
            let (g, alpha) = load_twist(ctx, twist)?;
            let x = load_complex(ctx, &g, complex)?;
            let a = match rel {
                None => None,
                Some(ids) if ids.is_empty() => Some(x.subcomplex().to_vec()),
                Some(ids) => Some(x.resolve_subcomplex(ids)?),
            };
            let sys = coefficient_system_from_cocycle(&alpha, &x.isotropy_family())?;
            let coh = integral_cohomology(&bredon_cochains(&x, &sys, a.as_deref())?)?;
            let r = BredonReport {
                schema: SCHEMA_VERSION,
                relative_to: a.unwrap_or_default().iter().map(|&i| x.cells()[i].id.clone()).collect(),
                cohomology: coh,
            };
            if tsv {
                let mut s = String::new();
                for d in &r.cohomology.degrees {
                    let mut f = vec!["H".to_string(), d.degree.to_string(), d.free_rank.to_string()];
                    f.extend(ints(&d.torsion));
                    s += &line(&f);
                }
                for (p, m) in r.cohomology.differentials.iter().enumerate() {
                    s += &line(&["d".into(), p.to_string(), m.rows().to_string(), m.cols().to_string()]);
                    s += &matrix_tsv(m);
                }
                s
            } else {
                json(&r)
            }
        }
        Command::Kranks { twist, complex } => {
            let (g, alpha) = load_twist(ctx, twist)?;
            let x = load_complex(ctx, &g, complex)?;
            let page = e2_page(&x, &alpha)?;
            let k = k_ranks_from_page(&page);
            let r = KRanksReport { schema: SCHEMA_VERSION, e2: page.entries, k0_rank: k.k0_rank, k1_rank: k.k1_rank, torsion: k.torsion };
            if tsv {
                let mut s = String::new();
                for e in &r.e2 {
                    let mut f = vec!["E2".to_string(), e.p.to_string(), e.q_mod_2.to_string(), e.free_rank.to_string()];
                    f.extend(ints(&e.torsion));
                    s += &line(&f);
                }
                s += &line(&["k0_rank".into(), r.k0_rank.to_string()]);
                s += &line(&["k1_rank".into(), r.k1_rank.to_string()]);
                s + &line(&["torsion".into(), r.torsion.clone()])
            } else {
                json(&r)
            }
        }
        Command::Orbitk { twist, subgroup } => {
            let (g, alpha) = load_twist(ctx, twist)?;
            let mut els = subgroup.clone();
            els.sort_unstable();
            els.dedup();
            let h = Subgroup::new(&g, els)?;
            let k = orbit_k(&alpha, &h)?;
            let r = OrbitKReport {
                schema: SCHEMA_VERSION,
                subgroup: h.elements().to_vec(),
                k0_rank: k.k0_rank(),
                k1_rank: k.k1_rank,
                irreducibles: irreducible_entries(&k.k0),
            };
            if tsv {
                let mut s = line(&["k0_rank".into(), r.k0_rank.to_string()]);
                s += &line(&["k1_rank".into(), r.k1_rank.to_string()]);
                s + &irreducibles_tsv(&r.irreducibles)
            } else {
                json(&r)
            }
        }
    })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    set_subgroup_bound(cli.max_group);
    let mut ctx = Ctx { format: cli.format, verbose: cli.verbose, log: String::new() };
    let result = execute(&mut ctx, &cli.command);
    let (code, stdout) = match result {
        Ok(s) => (0, s),
        Err(Failure::Domain(e)) => (1, json(&ErrorReport { error: e.code().into(), detail: e.to_string() })),
        Err(Failure::Input(d)) => (2, json(&ErrorReport { error: "InputError".into(), detail: d })),
    };
    Outcome { code, stdout, stderr: ctx.log }
}
