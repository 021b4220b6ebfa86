//! Run settings from flags and `key = value` files. Flags win over the file,
//! the file wins over the built-in defaults.

use std::path::{Path, PathBuf};

use biot_core::harness::{Case, KernelKind, RunConfig, SchemeKind, Stabilization};
use biot_core::mms::Example;
use clap::Args;

use crate::error::CliError;

/// Options shared by every subcommand.
#[derive(Debug, Default, Clone, Args)]
pub struct Settings {
    /// Manufactured example `1` or `2`, or `custom` for zero data
    #[arg(long)]
    pub example: Option<String>,
    /// Subdivisions per side of the unit square
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// Final time
    #[arg(long = "T")]
    pub final_time: Option<f64>,
    /// `monolithic` or `fixed-stress`
    #[arg(long)]
    pub scheme: Option<String>,
    /// Stabilization: a number or `auto`
    #[arg(long = "L", allow_hyphen_values = true)]
    pub stabilization: Option<String>,
    /// Relative pressure increment that stops the splitting
    #[arg(long = "eps-r")]
    pub eps_r: Option<f64>,
    #[arg(long = "max-iters")]
    pub max_iters: Option<usize>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write one VTK snapshot per level (run only)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub vtk: Option<bool>,
    /// `benchmark` or `constant`
    #[arg(long)]
    pub kernel: Option<String>,
    #[arg(long)]
    pub k0: Option<f64>,
    /// `key = value` file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Settings {
    /// Parses a settings file. Blank lines and `#` comments are skipped;
    /// keys are the flag names without dashes.
    pub fn parse_file(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Config(format!("line {}: {key} expects a number", i + 1)))
            };
            let int = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| CliError::Config(format!("line {}: {key} expects an integer", i + 1)))
            };
            match key {
                "example" => s.example = Some(value.into()),
                "n" => s.n = Some(int(value)?),
                "tau" => s.tau = Some(num(value)?),
                "T" => s.final_time = Some(num(value)?),
                "scheme" => s.scheme = Some(value.into()),
                "L" => s.stabilization = Some(value.into()),
                "eps-r" | "eps_r" => s.eps_r = Some(num(value)?),
                "max-iters" | "max_iters" => s.max_iters = Some(int(value)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "vtk" => {
                    s.vtk = Some(value.parse().map_err(|_| {
                        CliError::Config(format!("line {}: vtk expects true or false", i + 1))
                    })?)
                }
                "kernel" => s.kernel = Some(value.into()),
                "k0" => s.k0 = Some(num(value)?),
                other => {
                    return Err(CliError::Config(format!("line {}: unknown key {other:?}", i + 1)))
                }
            }
        }
        Ok(s)
    }

    /// Fields set in `self` replace those of `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            example: self.example.or(base.example),
            n: self.n.or(base.n),
            tau: self.tau.or(base.tau),
            final_time: self.final_time.or(base.final_time),
            scheme: self.scheme.or(base.scheme),
            stabilization: self.stabilization.or(base.stabilization),
            eps_r: self.eps_r.or(base.eps_r),
            max_iters: self.max_iters.or(base.max_iters),
            out: self.out.or(base.out),
            vtk: self.vtk.or(base.vtk),
            kernel: self.kernel.or(base.kernel),
            k0: self.k0.or(base.k0),
            config: None,
        }
    }

    /// Merges the `--config` file underneath the flags.
    pub fn resolve(self) -> Result<Settings, CliError> {
        match &self.config {
            Some(path) => {
                let file = read_file(path)?;
                Ok(self.over(file))
            }
            None => Ok(self),
        }
    }

    pub fn to_run_config(&self) -> Result<RunConfig, CliError> {
        let mut c = RunConfig::default();
        if let Some(e) = &self.example {
            c.case = match e.as_str() {
                "custom" | "zero" => Case::Zero,
                id => {
                    let id: u32 = id
                        .parse()
                        .map_err(|_| CliError::Config(format!("unknown example {id:?}")))?;
                    Case::Manufactured(Example::from_id(id)?)
                }
            };
        }
        if let Some(n) = self.n {
            c.subdivisions = n;
        }
        if let Some(t) = self.tau {
            c.tau = t;
        }
        if let Some(t) = self.final_time {
            c.final_time = t;
        }
        if let Some(s) = &self.scheme {
            c.scheme = match s.as_str() {
                "monolithic" => SchemeKind::Monolithic,
                "fixed-stress" | "fixed_stress" => SchemeKind::FixedStress,
                other => return Err(CliError::Config(format!("unknown scheme {other:?}"))),
            };
        }
        if let Some(l) = &self.stabilization {
            c.stabilization = parse_stabilization(l)?;
        }
        if let Some(e) = self.eps_r {
            c.tolerance = e;
        }
        if let Some(m) = self.max_iters {
            c.max_iterations = m;
        }
        c.output_dir = self.out.clone();
        c.vtk = self.vtk.unwrap_or(false);
        if let Some(k) = &self.kernel {
            c.kernel = match k.as_str() {
                "benchmark" => KernelKind::Benchmark,
                "constant" => KernelKind::Constant,
                other => return Err(CliError::Config(format!("unknown kernel {other:?}"))),
            };
        }
        if let Some(k0) = self.k0 {
            c.k0 = k0;
        }
        c.validate()?;
        Ok(c)
    }
}

pub fn parse_stabilization(text: &str) -> Result<Stabilization, CliError> {
    if text == "auto" {
        return Ok(Stabilization::Auto);
    }
    text.parse::<f64>()
        .map(Stabilization::Value)
        .map_err(|_| CliError::Config(format!("L must be a number or auto, got {text:?}")))
}

fn read_file(path: &Path) -> Result<Settings, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    Settings::parse_file(&text)
}
