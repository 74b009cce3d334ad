use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qgame", version, about = "Quantum game simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one game and report the final state and payoffs.
    Run(GameArgs),
    /// Evaluate a game over a 1-D parameter grid.
    Sweep {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Re-derive the headline numerical results and report pass/fail per check.
    VerifyPaper {
        /// Payoff coding override for the entangled prisoner's dilemma (JSON).
        #[arg(long)]
        coding: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw measurement shots from a game's exact outcome distribution.
    Sample {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Game {
    /// Entangle / play / disentangle prisoner's dilemma.
    PdQuantum,
    /// Prisoner's dilemma with an entangled payoff register.
    PdEntangled,
    /// Zero-sum game on two shared entangled pairs.
    Zerosum,
    /// Zero-sum game with an entangled payoff register.
    ZerosumEntangled,
    /// Classical mixed-strategy equivalent of a pd-quantum play.
    Equivalence,
}

impl Game {
    pub fn name(self) -> &'static str {
        match self {
            Game::PdQuantum => "pd-quantum",
            Game::PdEntangled => "pd-entangled",
            Game::Zerosum => "zerosum",
            Game::ZerosumEntangled => "zerosum-entangled",
            Game::Equivalence => "equivalence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Game to play (may also be given with --game).
    #[arg(value_enum)]
    pub game_pos: Option<Game>,
    #[arg(long = "game", value_enum, conflicts_with = "game_pos")]
    pub game: Option<Game>,

    /// Entangler strength, in [0, pi/2].
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
    pub gamma: f64,

    /// Named single-qubit strategy for A (I, X, Y, Z, H).
    #[arg(long = "a", conflicts_with_all = ["theta_a", "phi_a", "psi_a"])]
    pub named_a: Option<String>,
    /// Named single-qubit strategy for B (I, X, Y, Z, H).
    #[arg(long = "b", conflicts_with_all = ["theta_b", "phi_b", "psi_b"])]
    pub named_b: Option<String>,

    #[arg(long, allow_negative_numbers = true)]
    pub theta_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub psi_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub psi_b: Option<f64>,

    /// Payoff table override (JSON with keys CC, CD, DC, DD).
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Payoff-register coding override (JSON with keys 00, 01, 10, 11).
    #[arg(long)]
    pub coding: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl GameArgs {
    pub fn game(&self) -> Option<Game> {
        self.game.or(self.game_pos)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SweepParam {
    ThetaA,
    ThetaB,
    PhiA,
    PhiB,
    PsiA,
    PsiB,
    Gamma,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::ThetaA => "theta_a",
            SweepParam::ThetaB => "theta_b",
            SweepParam::PhiA => "phi_a",
            SweepParam::PhiB => "phi_b",
            SweepParam::PsiA => "psi_a",
            SweepParam::PsiB => "psi_b",
            SweepParam::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    /// Number of grid points, at least 2.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub steps: u64,
}
