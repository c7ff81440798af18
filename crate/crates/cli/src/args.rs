use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use twistfam_core::algebra::is_prime;

#[derive(Debug, Parser)]
#[command(name = "twistfam", version, about = "Elliptic curves over F_p(t): local data, L-functions and twist-family checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for the randomized point counts.
    #[arg(long, global = true, default_value_t = 0x1f)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tate's algorithm at one place, or at every bad place.
    Reduce {
        /// Curve file (`p=`, `a2=`, `a4=`, `a6=` lines).
        curve: PathBuf,
        /// `inf`, an integer `a` for `t = a`, or `[c0, c1, ...]` for a monic irreducible.
        #[arg(long)]
        place: Option<String>,
    },
    /// Invariants and L-function of a curve.
    Lfunction {
        curve: PathBuf,
        /// Check the functional equation against the computed root number.
        #[arg(long)]
        check_fe: bool,
        /// Primes for the special-value square-class check.
        #[arg(long, value_parser = parse_ells)]
        ell: Option<PrimeList>,
        /// Largest field size to tabulate before switching to half expansion.
        #[arg(long, default_value_t = twistfam_core::lfunction::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Checks a family's claimed invariants on every member over a grid of primes.
    VerifyFamily {
        /// A built-in family name or a family description file.
        family: String,
        /// Family parameter; defaults to the smallest admissible one.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = parse_primes)]
        primes: Option<PrimeList>,
        #[arg(long, value_parser = parse_ells)]
        ell: Option<PrimeList>,
    },
    /// Which witness matrix rules out the excluded orders mod each ell.
    #[command(name = "lemma92")]
    OrderTable {
        #[arg(long, value_parser = parse_ells)]
        ell: Option<PrimeList>,
    },
}

/// A sorted, deduplicated list of primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeList(pub Vec<u64>);

/// Items are `a` or inclusive ranges `a..b`; ranges keep only their primes.
fn parse_list(s: &str, min: u64, what: &str) -> Result<PrimeList, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in `{item}`"))?;
            let b: u64 = b.trim().parse().map_err(|_| format!("bad range end in `{item}`"))?;
            out.extend((a.max(min)..=b).filter(|&x| is_prime(x)));
        } else {
            let x: u64 = item.parse().map_err(|_| format!("bad integer `{item}`"))?;
            if x < min || !is_prime(x) {
                return Err(format!("{what} must be primes >= {min}, got {x}"));
            }
            out.push(x);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(format!("no {what} given"));
    }
    Ok(PrimeList(out))
}

fn parse_primes(s: &str) -> Result<PrimeList, String> {
    parse_list(s, 5, "primes")
}

fn parse_ells(s: &str) -> Result<PrimeList, String> {
    parse_list(s, 5, "ell values")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_primes("13, 7,7").unwrap().0, vec![7, 13]);
        assert_eq!(parse_ells("2..20").unwrap().0, vec![5, 7, 11, 13, 17, 19]);
        assert!(parse_primes("9").is_err());
        assert!(parse_primes("3").is_err());
        assert!(parse_primes("x").is_err());
        assert!(parse_primes("1..4").is_err());
    }
}
