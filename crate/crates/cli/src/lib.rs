//! Command-line front end for the nanoword toolkit.

pub mod commands;
pub mod input;

use std::sync::Arc;

use clap::{Parser, Subcommand};

use commands::{CmdResult, CommandError, Format};
use input::{parse_alphabet_arg, parse_caps, parse_phi, parse_word_arg, Input};
use nanoword::algebra::Alphabet;

#[derive(Debug, Parser)]
#[command(name = "nanoword", version, about = "Nanowords, their moves and cobordism invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Alphabet: `free:K`, `fixed:K`, `mixed:F,X`, `signs`, a file, or inline text with `;` line breaks.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Word: a file, inline text with `;` line breaks, or `ABAB A=a B=b`.
    #[arg(long, global = true)]
    pub word: Option<String>,
    /// Search caps, e.g. `letters=6,k=4,bfs=8,nodes=20000,s=2`.
    #[arg(long, global = true, default_value = "")]
    pub caps: String,
    /// `all` for every ±1 assignment, or values per orbit such as `1,-1` or `mod5:1,2`.
    #[arg(long, global = true, default_value = "all")]
    pub phi: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Reject redundant tau pairs such as `a<->b b<->a`.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// γ, u, σ_φ, hyperbolicity.
    Invariants,
    /// The pairing matrix of the word.
    Pairing,
    /// Fillings of the pairing and an annihilating one if it exists.
    Fillings {
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Surface statistics of a word over `{+, -}` and the rank of its Gram matrix.
    Surface,
    /// Bounded search for a metamorphosis, or replay of a move log.
    Moves {
        /// A move log to replay from the word.
        #[arg(long)]
        replay: Option<String>,
        /// Target word.
        #[arg(long)]
        to: Option<String>,
    },
    /// Slice verdict and length-norm bounds.
    CheckSlice,
    /// Classify all words with a given number of letters.
    Classify {
        #[arg(long)]
        letters: usize,
        /// Allow enumerations beyond 6 letters or 3 symbols.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn external_alphabet(cli: &Cli) -> Result<Option<Arc<Alphabet>>, CommandError> {
    Ok(match &cli.alphabet {
        Some(a) => Some(parse_alphabet_arg(a, cli.strict)?),
        None => None,
    })
}

fn word_input(cli: &Cli) -> Result<Input, CommandError> {
    let word = cli.word.as_deref().ok_or_else(|| CommandError::Usage("--word is required".into()))?;
    Ok(parse_word_arg(word, external_alphabet(cli)?, cli.strict)?)
}

pub fn run(cli: &Cli) -> CmdResult {
    if let Some(n) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let caps = parse_caps(&cli.caps)?;
    match &cli.command {
        Command::Invariants => {
            let input = word_input(cli)?;
            let battery = parse_phi(&cli.phi, &input.alphabet)?;
            commands::invariants(&input, &battery, cli.format)
        }
        Command::Pairing => commands::pairing(&word_input(cli)?),
        Command::Fillings { limit } => commands::fillings(&word_input(cli)?, *limit),
        Command::Surface => commands::surface(&word_input(cli)?, cli.format),
        Command::Moves { replay, to } => {
            let input = word_input(cli)?;
            let target = match to {
                Some(t) => Some(parse_word_arg(t, Some(input.alphabet.clone()), cli.strict)?),
                None => None,
            };
            let log = match replay {
                Some(path) => Some(std::fs::read_to_string(path)?),
                None => None,
            };
            commands::moves(&input, &caps, target.as_ref(), log.as_deref())
        }
        Command::CheckSlice => commands::check_slice(&word_input(cli)?, &caps),
        Command::Classify { letters, allow_large } => {
            let alphabet = external_alphabet(cli)?.ok_or_else(|| CommandError::Usage("--alphabet is required".into()))?;
            let input = Input { alphabet, items: Vec::new() };
            commands::classify_cmd(&input, *letters, &caps, *allow_large, cli.format)
        }
        Command::Verify { suite } => commands::verify(suite, cli.seed, &caps),
    }
}
