use std::io::{self, Write};
use std::net::{IpAddr, Ipv4Addr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use euclid_core::{Method, Position, Variant, DEFAULT_ORACLE_BOUND};

mod commands;

#[derive(Debug, Parser)]
#[command(
    name = "euclid",
    version,
    about = "Sprague-Grundy analysis of Euclid, Grossman's game and M-Euclid"
)]
struct Cli {
    /// Largest entry the brute-force oracle will evaluate.
    #[arg(long, global = true, env = "EUCLID_ORACLE_BOUND", default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    /// One JSON record per line.
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::ClosedForm => Method::ClosedForm,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grundy value, expansion, indices and winning moves of a position.
    Analyze {
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_parser = parse_position)]
        pos: Position,
        /// Also evaluate the brute-force oracle and report agreement.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the closed forms against the oracle on every pair up to --max.
    Verify {
        /// e, g, m or all; `all` also checks the relations between the games.
        #[arg(long, value_parser = parse_variant_set)]
        variant: VariantSet,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        /// Also check that no move keeps the value and every smaller value is reachable.
        #[arg(long)]
        properties: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Grundy values for 1 <= a <= max-a, 1 <= b <= max-b; terminal cells are T.
    Table {
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_a: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_b: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pairs up to --max where the three games have different values.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Continued fraction of max/min with its I and J indices.
    Cf {
        #[arg(value_parser = parse_position)]
        pos: Position,
    },
    /// A move to a position of value 0, if one exists.
    Hint {
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_parser = parse_position)]
        pos: Position,
        /// In a losing position, print the first legal move instead.
        #[arg(long)]
        any: bool,
    },
    /// Run the HTTP play service.
    Serve {
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory of web UI assets served at the root.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        #[arg(long, default_value_t = euclid_core::play::DEFAULT_SESSION_CAPACITY)]
        max_sessions: usize,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct VariantSet(Vec<Variant>);

impl VariantSet {
    fn is_all(&self) -> bool {
        self.0.len() == Variant::ALL.len()
    }
}

fn parse_variant_set(s: &str) -> Result<VariantSet, String> {
    if s.eq_ignore_ascii_case("all") {
        Ok(VariantSet(Variant::ALL.to_vec()))
    } else {
        parse_variant(s).map(|v| VariantSet(vec![v]))
    }
}

fn parse_position(s: &str) -> Result<Position, String> {
    let p: Position = s.parse().map_err(|e| format!("{e}"))?;
    if p.a == 0 || p.b == 0 {
        return Err("entries must be positive".into());
    }
    Ok(p)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
