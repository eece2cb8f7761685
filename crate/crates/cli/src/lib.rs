//! Command-line frontend for `subdepth`.

pub mod cache;
pub mod render;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use subdepth::cartan::{self, AlgebraMatrixData, NecessaryCondition, Parity, ValidationReport};
use subdepth::chartab::ClassRecord;
use subdepth::classfn::permutation_character;
use subdepth::depth::{corefree_compare, quotient_module_character, subgroup_depth_interval_check};
use subdepth::double::{diagonal_depth, double_depth};
use subdepth::moddepth::{
    burnside_brauer_bound, module_depth, support_chain, BurnsideBrauerReport, SupportChainReport,
};
use subdepth::{
    Error, ModuleDepthReport, Permutation, PermutationGroup, SubgroupEmbedding, TableSource,
    DEFAULT_ORDER_CAP,
};

use crate::cache::{default_cache_dir, CachedTables};
use crate::render::{render, Format};
use crate::spec::{parse_group_spec, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USER_ERROR: i32 = 2;

/// Exact subgroup depth, module depth and Drinfeld-double depth of finite
/// permutation groups.
///
/// Groups: S(n), A(n), C(n), D(n) (dihedral of order n), Klein, G108,
/// `<spec> x <spec>`, diag(<spec>), perm(<degree>; (1 2)(3 4), (1 2 3)).
/// Subgroups are read in the degree of the supergroup; named groups embed by the
/// natural inclusion of points.
#[derive(Debug, Parser)]
#[command(name = "subdepth", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached character tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write cached tables.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Include witness matrices in depth reports.
    #[arg(long, global = true)]
    pub certificate: bool,
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugacy classes in canonical order.
    Classes { group: String },
    /// Character table.
    Chartab { group: String },
    /// Minimum depth, odd/even depth and h-depth of H in G, with the module-depth interval.
    Depth { group: String, subgroup: String },
    /// Module depth of the coset module k[H\G] over H and over G.
    ModuleDepth { group: String, subgroup: String },
    /// Depth of kG in its Drinfeld double.
    Double { group: String },
    /// Depth of the diagonal subgroup of G x G.
    Diag { group: String },
    /// Support and kernel chains of the coset module over H.
    Chain { group: String, subgroup: String },
    /// Compare H in G with H/N in G/N for the core N.
    Corefree { group: String, subgroup: String },
    /// Validate algebra matrix data and test the necessary depth conditions.
    Cartan {
        file: PathBuf,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = parse_parity)]
        parity: Option<Parity>,
    },
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command before a report exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid group `{text}`: {source}")]
    Spec { text: String, source: SpecError },
    #[error("{0}")]
    User(String),
    #[error("{0}")]
    Library(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if !is_user_error(e) => EXIT_VIOLATION,
            _ => EXIT_USER_ERROR,
        }
    }
}

/// Errors caused by the input rather than by an inconsistency in the computation.
fn is_user_error(e: &Error) -> bool {
    !matches!(
        e,
        Error::PrimeSearchFailed { .. }
            | Error::LiftInconsistent(_)
            | Error::TableMismatch
            | Error::GroupMismatch
            | Error::NotACharacter(_)
    )
}

/// A rendered report and the theorem assertions it found violated.
pub struct Outcome {
    pub value: Value,
    pub violations: Vec<String>,
    /// Input data failed validation.
    pub invalid_input: bool,
}

impl Outcome {
    fn new(report: &impl Serialize, violations: Vec<String>) -> Self {
        Self {
            value: serde_json::to_value(report).expect("reports serialize"),
            violations,
            invalid_input: false,
        }
    }
}

pub struct Context {
    pub tables: CachedTables,
    pub certificate: bool,
    pub order_cap: usize,
}

impl Context {
    pub fn group(&self, text: &str) -> Result<Arc<PermutationGroup>, CliError> {
        let spec = parse_group_spec(text).map_err(|source| CliError::Spec {
            text: text.to_string(),
            source,
        })?;
        Ok(Arc::new(spec.build(self.order_cap)?))
    }

    /// `H` read in the degree of `G`, rejected unless every generator lies in `G`.
    pub fn embedding(&self, group: &str, subgroup: &str) -> Result<SubgroupEmbedding, CliError> {
        let g = self.group(group)?;
        let h = self.group(subgroup)?;
        let n = g.degree();
        if h.degree() > n {
            return Err(CliError::User(format!(
                "subgroup `{subgroup}` has degree {} above the degree {n} of `{group}`",
                h.degree()
            )));
        }
        let gens: Vec<Permutation> = h
            .generators()
            .iter()
            .map(|x| x.extend_to(n))
            .collect::<subdepth::Result<_>>()?;
        let outside: Vec<String> = gens
            .iter()
            .filter(|x| !g.contains(x))
            .map(ToString::to_string)
            .collect();
        if !outside.is_empty() {
            return Err(CliError::User(format!(
                "`{subgroup}` is not a subgroup of `{group}`; generators outside: {}",
                outside.join(", ")
            )));
        }
        let label = h.label().unwrap_or(subgroup).to_string();
        let h = if h.degree() == n {
            h
        } else {
            Arc::new(PermutationGroup::generate_capped(n, gens, self.order_cap)?.with_label(label))
        };
        Ok(SubgroupEmbedding::new(g, h)?)
    }
}

#[derive(Serialize)]
struct ClassRow {
    index: usize,
    representative: String,
    size: usize,
    order: usize,
    centralizer_order: usize,
    inverse_class: usize,
}

#[derive(Serialize)]
struct ClassesOutput {
    group: Arc<PermutationGroup>,
    exponent: usize,
    center_order: usize,
    classes: Vec<ClassRow>,
}

#[derive(Serialize)]
struct ChartabOutput {
    group: Arc<PermutationGroup>,
    conductor: usize,
    classes: Vec<ClassRecord>,
    degrees: Vec<u64>,
    characters: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ModuleDepthOutput {
    supergroup: String,
    subgroup: String,
    over_subgroup: ModuleDepthReport,
    over_group: ModuleDepthReport,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct ChainOutput {
    supergroup: String,
    subgroup: String,
    chain: SupportChainReport,
    core: PermutationGroup,
    kernel_is_core: bool,
    burnside_brauer: Option<BurnsideBrauerReport>,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct ConditionOutput {
    n: u32,
    parity: Parity,
    depth: u32,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<subdepth::depth::Certificate>,
}

impl ConditionOutput {
    fn new(c: NecessaryCondition, with_certificate: bool) -> Self {
        Self {
            n: c.n,
            parity: c.parity,
            depth: c.depth,
            holds: c.holds,
            certificate: with_certificate.then_some(c.certificate),
        }
    }
}

#[derive(Serialize)]
struct CartanOutput {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    validation: ValidationReport,
    conditions: Vec<ConditionOutput>,
}

pub fn execute(command: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    let tables: &dyn TableSource = &ctx.tables;
    match command {
        Command::Classes { group } => {
            let g = ctx.group(group)?;
            let c = g.classes();
            let classes = (0..c.len())
                .map(|k| ClassRow {
                    index: k,
                    representative: c.representatives[k].to_string(),
                    size: c.class_sizes[k],
                    order: c.element_orders[k],
                    centralizer_order: c.centralizer_order(k, g.order()),
                    inverse_class: c.inverse_class[k],
                })
                .collect();
            let out = ClassesOutput {
                exponent: c.exponent,
                center_order: g.center().order(),
                classes,
                group: g,
            };
            Ok(Outcome::new(&out, Vec::new()))
        }
        Command::Chartab { group } => {
            let g = ctx.group(group)?;
            let t = tables.table(&g)?;
            let doc = t.to_document();
            let out = ChartabOutput {
                group: g,
                conductor: t.conductor(),
                classes: doc.classes,
                degrees: t.degrees().to_vec(),
                characters: t
                    .irreducibles()
                    .iter()
                    .map(|row| row.iter().map(ToString::to_string).collect())
                    .collect(),
            };
            Ok(Outcome::new(&out, Vec::new()))
        }
        Command::Depth { group, subgroup } => {
            let emb = ctx.embedding(group, subgroup)?;
            let mut check = subgroup_depth_interval_check(&emb, tables)?;
            if !ctx.certificate {
                check = check.without_certificates();
            }
            let violations = check.violations.clone();
            Ok(Outcome::new(&check, violations))
        }
        Command::ModuleDepth { group, subgroup } => {
            let emb = ctx.embedding(group, subgroup)?;
            let table_h = tables.table(&emb.subgroup)?;
            let table_g = tables.table(&emb.supergroup)?;
            let over_subgroup = module_depth(&quotient_module_character(&emb), &table_h)?;
            let over_group = module_depth(&permutation_character(&emb), &table_g)?;
            let mut violations = over_subgroup.verify(table_h.len());
            violations.extend(over_group.verify(table_g.len()));
            let out = ModuleDepthOutput {
                supergroup: emb.supergroup.display_name(),
                subgroup: emb.subgroup.display_name(),
                over_subgroup,
                over_group,
                violations: violations.clone(),
            };
            Ok(Outcome::new(&out, violations))
        }
        Command::Double { group } => {
            let g = ctx.group(group)?;
            let mut rep = double_depth(&*tables.table(&g)?)?;
            if !ctx.certificate {
                rep = rep.without_certificates();
            }
            let violations = rep.violations.clone();
            Ok(Outcome::new(&rep, violations))
        }
        Command::Diag { group } => {
            let g = ctx.group(group)?;
            let mut rep = diagonal_depth(&g, tables, ctx.order_cap)?;
            if !ctx.certificate {
                rep = rep.without_certificates();
            }
            let violations = rep.violations.clone();
            Ok(Outcome::new(&rep, violations))
        }
        Command::Chain { group, subgroup } => {
            let emb = ctx.embedding(group, subgroup)?;
            let table_h = tables.table(&emb.subgroup)?;
            let chi = quotient_module_character(&emb);
            let chain = support_chain(&chi, &table_h)?;
            let core = emb.core();
            let kernel_is_core = chain.kernel_subgroup.same_as(&core);
            let burnside_brauer = match burnside_brauer_bound(&chi, &table_h) {
                Ok(b) => Some(b),
                Err(Error::NotFaithful { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let mut violations = chain.violations.clone();
            if !kernel_is_core {
                violations.push("kernel of the coset module differs from the core".into());
            }
            if burnside_brauer.as_ref().is_some_and(|b| !b.holds) {
                violations.push("stabilization index exceeds the number of values".into());
            }
            let out = ChainOutput {
                supergroup: emb.supergroup.display_name(),
                subgroup: emb.subgroup.display_name(),
                chain,
                core,
                kernel_is_core,
                burnside_brauer,
                violations: violations.clone(),
            };
            Ok(Outcome::new(&out, violations))
        }
        Command::Corefree { group, subgroup } => {
            let emb = ctx.embedding(group, subgroup)?;
            let rep = corefree_compare(&emb, tables)?;
            let violations = rep.violations.clone();
            Ok(Outcome::new(&rep, violations))
        }
        Command::Cartan { file, n, parity } => {
            let text = std::fs::read_to_string(file)?;
            let data: AlgebraMatrixData = serde_json::from_str(&text).map_err(|e| {
                CliError::User(format!(
                    "{}: not valid algebra matrix data: {e}",
                    file.display()
                ))
            })?;
            let validation = cartan::validate(&data);
            let invalid_input = !validation.passes();
            let mut conditions = Vec::new();
            if !invalid_input {
                let parities = match parity {
                    Some(p) => vec![*p],
                    None => vec![Parity::Even, Parity::Odd],
                };
                let ns: Vec<u32> = match n {
                    Some(k) => vec![*k],
                    None => (1..=data.r.max(data.s) as u32 + 1).collect(),
                };
                for &k in &ns {
                    for &p in &parities {
                        let c = cartan::necessary_condition(&data, k, p)?;
                        conditions.push(ConditionOutput::new(c, ctx.certificate));
                    }
                }
            }
            let out = CartanOutput {
                label: data.label.clone(),
                note: data.note.clone(),
                validation,
                conditions,
            };
            let mut outcome = Outcome::new(&out, Vec::new());
            outcome.invalid_input = invalid_input;
            Ok(outcome)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USER_ERROR };
        }
    };
    let dir = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(default_cache_dir)
    };
    let ctx = Context {
        tables: CachedTables::new(dir),
        certificate: cli.certificate,
        order_cap: cli.order_cap,
    };
    match execute(&cli.command, &ctx) {
        Ok(outcome) => {
            let _ = write!(stdout, "{}", render(&outcome.value, cli.format));
            if outcome.invalid_input {
                let _ = writeln!(stderr, "error: input data failed validation");
                return EXIT_USER_ERROR;
            }
            if outcome.violations.is_empty() {
                EXIT_OK
            } else {
                for v in &outcome.violations {
                    let _ = writeln!(stderr, "violated: {v}");
                }
                EXIT_VIOLATION
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
