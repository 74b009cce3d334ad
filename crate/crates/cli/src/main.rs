mod args;
mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde::Serialize;

use qgame_core::claims::run_all_with;
use qgame_core::games::{Payoff, PayoffCoding};
use qgame_core::sampling::{sample_summary, SampleSummary};

use args::{Cli, Command, Format, Game};
use report::{load_coding, play, report_csv, sweep, sweep_csv, Report, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Run(args) => {
            let cfg = RunConfig::from_args(&args)?;
            let (r, _) = play(&cfg)?;
            let out = match args.format {
                Format::Json => to_json(&r)?,
                Format::Csv => report_csv(&r),
                Format::Text => report_text(&r),
            };
            println!("{}", out.trim_end());
        }
        Command::Sweep { game, sweep: s } => {
            let cfg = RunConfig::from_args(&game)?;
            let steps = usize::try_from(s.steps).context("too many steps")?;
            let rows = sweep(&cfg, s.param, s.lo, s.hi, steps)?;
            let out = match game.format {
                Format::Json => to_json(&rows)?,
                Format::Csv | Format::Text => sweep_csv(&rows),
            };
            println!("{}", out.trim_end());
        }
        Command::VerifyPaper { coding, format } => {
            let coding = match coding {
                Some(p) => load_coding(&p)?,
                None => PayoffCoding::entangled_pd(),
            };
            let checks = run_all_with(&coding)?;
            match format {
                Format::Json => println!("{}", to_json(&checks)?),
                Format::Csv => {
                    println!("id,name,passed");
                    for c in &checks {
                        println!("{},{},{}", c.id, c.name, c.passed);
                    }
                }
                Format::Text => {
                    for c in &checks {
                        println!("{c}");
                    }
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                eprintln!("{failed} of {} checks failed", checks.len());
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Sample { game, shots, seed } => {
            let cfg = RunConfig::from_args(&game)?;
            let (r, dist) = play(&cfg)?;
            let shots = usize::try_from(shots).context("too many shots")?;
            let summary = sample_summary(&dist, shots, seed)?;
            let out = SampleReport::new(&cfg, &r, summary)?;
            let text = match game.format {
                Format::Json => to_json(&out)?,
                Format::Csv | Format::Text => out.csv(),
            };
            println!("{}", text.trim_end());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SampleReport {
    game: &'static str,
    register: Vec<usize>,
    #[serde(flatten)]
    summary: SampleSummary,
    payoffs: BTreeMap<String, [f64; 2]>,
    sample_mean_payoffs: [f64; 2],
    expected_payoffs: [f64; 2],
}

impl SampleReport {
    fn new(cfg: &RunConfig, r: &Report, summary: SampleSummary) -> Result<Self> {
        let decode = |bits: &str| -> Result<Payoff> {
            Ok(match cfg.game {
                Game::PdQuantum | Game::Equivalence => {
                    let b = bits.as_bytes();
                    cfg.table.get(usize::from(b[0] == b'1'), usize::from(b[1] == b'1'))
                }
                Game::PdEntangled => cfg.coding.unwrap_or_else(PayoffCoding::entangled_pd).decode(bits)?,
                Game::ZerosumEntangled => cfg.coding.unwrap_or_else(PayoffCoding::entangled_zero_sum).decode(bits)?,
                Game::Zerosum => {
                    // A wins when its pair (qubits 1, 2) agrees
                    let b = bits.as_bytes();
                    if b[0] == b[1] {
                        Payoff::new(1.0, -1.0)
                    } else {
                        Payoff::new(-1.0, 1.0)
                    }
                }
            })
        };
        let mut payoffs = BTreeMap::new();
        let mut mean = [0.0; 2];
        for (bits, count) in &summary.counts {
            let p = decode(bits)?;
            let w = *count as f64 / summary.shots as f64;
            mean[0] += w * p.a;
            mean[1] += w * p.b;
            payoffs.insert(bits.clone(), [p.a, p.b]);
        }
        Ok(Self {
            game: r.game,
            register: r.register.clone(),
            summary,
            payoffs,
            sample_mean_payoffs: mean.map(report::sig15),
            expected_payoffs: r.expected_payoffs,
        })
    }

    fn csv(&self) -> String {
        let mut out = String::from("outcome,count,frequency,exact,payoff_a,payoff_b\n");
        for (bits, count) in &self.summary.counts {
            let [a, b] = self.payoffs[bits];
            out.push_str(&format!(
                "{bits},{count},{},{},{a},{b}\n",
                self.summary.frequencies[bits], self.summary.exact[bits]
            ));
        }
        out
    }
}

fn report_text(r: &Report) -> String {
    let mut out = format!("game: {}\n", r.game);
    if let Some(g) = r.gamma {
        out.push_str(&format!("gamma: {g}\n"));
    }
    out.push_str(&format!("strategies: A = {}, B = {}\n", r.strategy_a, r.strategy_b));
    out.push_str(&format!("register {:?}:\n", r.register));
    for (bits, p) in &r.register_distribution {
        out.push_str(&format!("  |{bits}>  {p}\n"));
    }
    out.push_str("payoffs:\n");
    for row in &r.payoff_distribution {
        out.push_str(&format!("  ({}, {})  {}\n", row.payoff[0], row.payoff[1], row.probability));
    }
    out.push_str(&format!(
        "expected: ({}, {})\n",
        r.expected_payoffs[0], r.expected_payoffs[1]
    ));
    if let Some(z) = &r.zero_sum {
        out.push_str(&format!("P_A = {}, P_B = {}, classical p-2pq+q = {}\n", z.p_a, z.p_b, z.classical_p_a));
    }
    if let Some(e) = &r.equivalence {
        match e.solver_solution {
            Some(s) => out.push_str(&format!("classical mix: r = {}, q = {}\n", s.r, s.q)),
            None => out.push_str("classical mix: none\n"),
        }
    }
    out
}
