use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gammakit_core::{AlgebraParams, OperatorParams};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "gammakit",
    version,
    about = "Hypercomplex solution generators for Γ(α, β) h = 0 and Γ² h = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the algebra A(α/β, 1/β) (or A(l1, l2)) and its classification.
    Classify(ParamArgs),
    /// Check the generalized Cauchy-Riemann equations for a function file.
    VerifyCr(VerifyCrArgs),
    /// Emit a random A-differentiable polynomial, its components and their Γ-residuals.
    Generate(GenerateArgs),
    /// Compose a Γ-solution h(u, v) with an A-differentiable map.
    Compose(ComposeArgs),
    /// Build Im(conj(z) f(z) + g(z)) and check Γ² of it.
    Goursat(GoursatArgs),
    /// Finite-difference residual of a polynomial field.
    FdVerify(FdVerifyArgs),
    /// Fit Dirichlet data by least-squares collocation on a solution basis.
    SolveBvp(SolveBvpArgs),
}

/// Either an operator `(α, β)` or an algebra `(l1, l2)`, never both.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub l1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub l2: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub enum Params {
    Operator(OperatorParams),
    Algebra(AlgebraParams),
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<Params, CliError> {
        let op = pair(self.alpha, self.beta, "--alpha", "--beta")?;
        let alg = pair(self.l1, self.l2, "--l1", "--l2")?;
        match (op, alg) {
            (Some((a, b)), None) => Ok(Params::Operator(OperatorParams::new(a, b))),
            (None, Some((l1, l2))) => Ok(Params::Algebra(AlgebraParams::new(l1, l2))),
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give either --alpha/--beta or --l1/--l2, not both".into(),
            )),
            (None, None) => Err(CliError::Usage(
                "missing parameters: give --alpha/--beta or --l1/--l2".into(),
            )),
        }
    }
}

fn pair(
    a: Option<f64>,
    b: Option<f64>,
    na: &str,
    nb: &str,
) -> Result<Option<(f64, f64)>, CliError> {
    match (a, b) {
        (Some(a), Some(b)) => Ok(Some((a, b))),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage(format!(
            "{na} and {nb} must be given together"
        ))),
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OperatorArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
}

impl OperatorArgs {
    pub fn op(&self) -> OperatorParams {
        OperatorParams::new(self.alpha, self.beta)
    }
}

#[derive(Debug, Args)]
pub struct VerifyCrArgs {
    /// APoly JSON, `{"u": .., "v": ..}` pair, or `generate` output.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub op: OperatorArgs,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, env = "GAMMAKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Coefficient components are drawn from [-range, range].
    #[arg(long, default_value_t = 10.0)]
    pub range: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Component {
    U,
    V,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    /// Polynomial h(u, v): BiPoly JSON or a document holding one.
    #[arg(long, value_name = "FILE")]
    pub h: PathBuf,
    /// Component to read as h when the file is `generate` output.
    #[arg(long, value_enum, default_value_t = Component::U)]
    pub component: Component,
    /// APoly JSON or `generate` output.
    #[arg(long, value_name = "FILE")]
    pub f: PathBuf,
    #[command(flatten)]
    pub op: OperatorArgs,
    /// Skip the Γh = 0 precondition (the Jacobian identity is still reported).
    #[arg(long)]
    pub skip_check: bool,
}

#[derive(Debug, Args)]
pub struct GoursatArgs {
    #[arg(long, value_name = "FILE")]
    pub f: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub g: PathBuf,
    #[command(flatten)]
    pub op: OperatorArgs,
    /// Use the real part instead of the imaginary part (experimental).
    #[arg(long)]
    pub experimental_re: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FdVerifyArgs {
    #[arg(long, value_name = "FILE")]
    pub field: PathBuf,
    #[command(flatten)]
    pub op: OperatorArgs,
    #[arg(long, value_enum)]
    pub order: Order,
    /// Stencil spacing; 1e-3 for order 1, 1e-2 for order 2 by default.
    #[arg(long)]
    pub step: Option<f64>,
    /// Number of random points in [-1, 1]².
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, env = "GAMMAKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Circle,
    Rect,
}

#[derive(Debug, Args)]
pub struct SolveBvpArgs {
    #[command(flatten)]
    pub op: OperatorArgs,
    #[arg(long, value_enum)]
    pub order: Order,
    #[arg(long)]
    pub degree: u32,
    #[arg(long, value_enum, default_value_t = ShapeKind::Circle)]
    pub shape: ShapeKind,
    /// Circle center as `x,y`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub center: String,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Rectangle corners as `xmin,ymin,xmax,ymax`.
    #[arg(long, default_value = "-1,-1,1,1", allow_hyphen_values = true)]
    pub rect: String,
    /// Boundary samples; defaults to twice the basis size.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Dirichlet data: a BiPoly JSON evaluated on the boundary, or an
    /// `x,y,value` CSV of samples (then --shape/--samples are ignored).
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Evaluate the fit on a grid over the domain and write `x,y,value` CSV.
    #[arg(long, value_name = "FILE")]
    pub grid: Option<PathBuf>,
    #[arg(long, default_value_t = 21)]
    pub grid_n: usize,
    /// Also write the boundary samples as `x,y,value` CSV.
    #[arg(long, value_name = "FILE")]
    pub boundary_out: Option<PathBuf>,
}
