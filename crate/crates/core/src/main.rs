//! `cyclegame` command-line front end.
//!
//! Exit codes: 0 the property holds, 1 it fails, 2 input error, 3 a resource
//! bound was hit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cyclegame::catalog;
use cyclegame::equilibrium::{
    find_nash_equilibria, subgame_perfect, subgame_perfect_all_extensions, verify_ne_free_all_extensions,
    verify_ne_free_certificate, DEFAULT_MAX_PROFILES,
};
use cyclegame::export::{normal_form_csv, normal_form_markdown};
use cyclegame::format::{
    format_attractor_solution, parse_game, parse_game_unchecked, parse_preferences, parse_win_assignment,
    serialize_game, serialize_preferences,
};
use cyclegame::random::{random_game, random_profile, rng, RandomGameSpec};
use cyclegame::solvers::{backward_induction, zero_sum_attractor};
use cyclegame::strategy::{build_normal_form_with, NormalFormOptions, DEFAULT_MAX_CELLS};
use cyclegame::{EquilibriumError, GameError, GameForm, NormalForm, PlayerPreference, PreferenceProfile};

#[derive(Parser)]
#[command(name = "cyclegame", version, about = "Chess-like positional games on digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Certificate,
    Extensions,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyKind {
    /// Two players, any number of terminals.
    TwoPerson,
    /// Up to four players, at most two terminals.
    TwoTerminals,
    /// Up to four players, at most three terminals.
    ThreeTerminals,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a game file.
    Validate { game: PathBuf },
    /// Print the normal form of a game.
    NormalForm {
        game: PathBuf,
        /// Preference file used to compute the improving players of each cell.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Establish that no agreeing preference profile has a Nash equilibrium.
    VerifyNeFree {
        game: PathBuf,
        prefs: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        mode: VerifyMode,
        #[arg(long, default_value_t = DEFAULT_MAX_PROFILES)]
        max_profiles: u64,
    },
    /// Subgame perfect equilibria (every extension profile for partial orders).
    Spne {
        game: PathBuf,
        prefs: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_PROFILES)]
        max_profiles: u64,
    },
    /// Solve a two-person win/lose game.
    SolveZeroSum { game: PathBuf, wins: PathBuf },
    /// Backward induction on an acyclic game with total preferences.
    BackwardInduction { game: PathBuf, prefs: PathBuf },
    /// Print or emit a built-in game and its preferences.
    Catalog {
        /// One of: main, g2, g3, g6.
        name: String,
        /// Directory receiving `<name>.game` and `<name>.pref`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exhaustive subgame perfect search over all preference profiles on G_k.
    GkSearch {
        #[arg(long)]
        k: usize,
        /// Controller of v1..vk, comma separated.
        #[arg(long, value_delimiter = ',')]
        controllers: Vec<usize>,
        /// Only profiles in which every terminal beats the cycle.
        #[arg(long)]
        cycle_worst: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_PROFILES)]
        max_profiles: u64,
    },
    /// Search random games for a counterexample to Nash-solvability.
    PropertyCheck {
        #[arg(long, value_enum)]
        kind: PropertyKind,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Bound(String),
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::NormalFormTooLarge { .. } => Failure::Bound(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<EquilibriumError> for Failure {
    fn from(e: EquilibriumError) -> Self {
        match e {
            EquilibriumError::Game(g) => g.into(),
            EquilibriumError::TooManyProfiles { .. } => Failure::Bound(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<GameForm, Failure> {
    parse_game(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_prefs(path: &Path, game: &GameForm) -> Result<Vec<PlayerPreference>, Failure> {
    parse_preferences(&read(path)?, game).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn max_cells() -> u64 {
    std::env::var("CYCLEGAME_MAX_CELLS").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
}

fn normal_form(game: &GameForm) -> Result<NormalForm, Failure> {
    Ok(build_normal_form_with(game, NormalFormOptions { start: None, max_cells: max_cells() })?)
}

fn situation_text(game: &GameForm, nf: &NormalForm, coords: &[usize]) -> String {
    let labels: Vec<String> = coords.iter().enumerate().map(|(i, c)| format!("s{}_{}", i + 1, c + 1)).collect();
    format!("({}) -> {}", labels.join(", "), game.outcome_name(nf.outcome(coords)))
}

fn run(command: Command, out: &mut String) -> Result<bool, Failure> {
    match command {
        Command::Validate { game } => {
            let g =
                parse_game_unchecked(&read(&game)?).map_err(|e| Failure::Input(format!("{}: {e}", game.display())))?;
            let report = g.validate();
            writeln!(out, "{report}").unwrap();
            Ok(report.is_valid())
        }
        Command::NormalForm { game, labels, format, out: path } => {
            let g = load_game(&game)?;
            let nf = normal_form(&g)?;
            let table = match labels {
                Some(p) => {
                    let partials: Vec<_> = load_prefs(&p, &g)?.iter().map(PlayerPreference::to_partial).collect();
                    Some(verify_ne_free_certificate(&nf, &partials)?.labels)
                }
                None => None,
            };
            let text = match format {
                TableFormat::Csv => normal_form_csv(&g, &nf, table.as_deref()),
                TableFormat::Md => normal_form_markdown(&g, &nf, table.as_deref()),
            };
            match path {
                Some(p) => std::fs::write(&p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => out.push_str(&text),
            }
            Ok(true)
        }
        Command::VerifyNeFree { game, prefs, mode, max_profiles } => {
            let g = load_game(&game)?;
            let partials: Vec<_> = load_prefs(&prefs, &g)?.iter().map(PlayerPreference::to_partial).collect();
            let nf = normal_form(&g)?;
            let mut ok = true;
            if mode != VerifyMode::Extensions {
                let cert = verify_ne_free_certificate(&nf, &partials)?;
                writeln!(out, "mode {}: {} situations", cert.report.mode, nf.len()).unwrap();
                match cert.first_uncertified() {
                    None => writeln!(out, "every situation has a certified improver").unwrap(),
                    Some(c) => writeln!(
                        out,
                        "{} uncertified situations; first: {}",
                        cert.report.equilibria.len(),
                        situation_text(&g, &nf, c)
                    )
                    .unwrap(),
                }
                writeln!(out, "{}", cert.report.trailer()).unwrap();
                ok &= cert.certified();
            }
            if mode != VerifyMode::Certificate {
                let report = verify_ne_free_all_extensions(&nf, &partials, max_profiles)?;
                writeln!(
                    out,
                    "mode {}: {} profiles, {} with an equilibrium",
                    report.mode, report.profile_count, report.profiles_with_equilibria
                )
                .unwrap();
                for c in &report.equilibria {
                    writeln!(out, "equilibrium {}", situation_text(&g, &nf, c)).unwrap();
                }
                writeln!(out, "{}", report.trailer()).unwrap();
                ok &= report.is_ne_free();
            }
            Ok(ok)
        }
        Command::Spne { game, prefs, max_profiles } => {
            let g = load_game(&game)?;
            let prefs = load_prefs(&prefs, &g)?;
            let nf = normal_form(&g)?;
            match PreferenceProfile::from_preferences(g.num_players(), &prefs) {
                Ok(profile) => {
                    let found = subgame_perfect(&g, &profile, max_cells())?;
                    for c in &found {
                        writeln!(out, "spne {}", situation_text(&g, &nf, c)).unwrap();
                    }
                    writeln!(out, "RESULT spne={}", found.len()).unwrap();
                    Ok(!found.is_empty())
                }
                Err(_) => {
                    writeln!(out, "note: partial orders read as the order generated by their pairs").unwrap();
                    let partials: Vec<_> = prefs.iter().map(PlayerPreference::to_partial).collect();
                    let report = subgame_perfect_all_extensions(&g, &partials, max_cells(), max_profiles)?;
                    for c in &report.situations {
                        writeln!(out, "spne {}", situation_text(&g, &nf, c)).unwrap();
                    }
                    writeln!(out, "{}", report.trailer()).unwrap();
                    Ok(report.profiles_with_spne == report.profile_count)
                }
            }
        }
        Command::SolveZeroSum { game, wins } => {
            let g = load_game(&game)?;
            let w = parse_win_assignment(&read(&wins)?, &g)
                .map_err(|e| Failure::Input(format!("{}: {e}", wins.display())))?;
            let sol = zero_sum_attractor(&g, &w).map_err(input)?;
            out.push_str(&format_attractor_solution(&g, &sol));
            writeln!(out, "winner from {}: {}", g.name(g.initial()), sol.winner_from[g.initial().0]).unwrap();
            Ok(true)
        }
        Command::BackwardInduction { game, prefs } => {
            let g = load_game(&game)?;
            let prefs = load_prefs(&prefs, &g)?;
            let profile = PreferenceProfile::from_preferences(g.num_players(), &prefs).map_err(input)?;
            let bi = backward_induction(&g, &profile).map_err(input)?;
            for s in &bi.situation.strategies {
                writeln!(out, "strategy {}", s.player).unwrap();
                for &(v, w) in &s.moves {
                    writeln!(out, "move {} {}", g.name(v), g.name(w)).unwrap();
                }
            }
            writeln!(out, "outcome {}", g.outcome_name(bi.value(g.initial()))).unwrap();
            Ok(true)
        }
        Command::Catalog { name, emit } => {
            let entry = catalog::by_name(&name).ok_or_else(|| {
                Failure::Input(format!("unknown catalog entry `{name}` (known: {})", catalog::NAMES.join(", ")))
            })?;
            let game_text = serialize_game(&entry.game);
            let pref_text = serialize_preferences(&entry.game, &entry.preferences);
            match emit {
                Some(dir) => {
                    let write = |file: PathBuf, text: &str| {
                        std::fs::write(&file, text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
                    };
                    std::fs::create_dir_all(&dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
                    write(dir.join(format!("{name}.game")), &game_text)?;
                    write(dir.join(format!("{name}.pref")), &pref_text)?;
                    writeln!(out, "wrote {name}.game and {name}.pref to {}", dir.display()).unwrap();
                }
                None => {
                    out.push_str(&game_text);
                    out.push_str(&pref_text);
                }
            }
            Ok(true)
        }
        Command::GkSearch { k, controllers, cycle_worst, max_profiles } => {
            let players = controllers.iter().copied().max().unwrap_or(0);
            let g = catalog::build_gk(k, players, &controllers, 1)?;
            let partials = catalog::unconstrained_orders(&g, cycle_worst).map_err(input)?;
            let report = subgame_perfect_all_extensions(&g, &partials, max_cells(), max_profiles)?;
            writeln!(out, "spne-free profiles: {}", report.profile_count - report.profiles_with_spne).unwrap();
            writeln!(out, "{}", report.trailer()).unwrap();
            Ok(report.profiles_with_spne == report.profile_count)
        }
        Command::PropertyCheck { kind, samples, seed } => {
            let mut r = rng(seed);
            for i in 0..samples {
                let spec = match kind {
                    PropertyKind::TwoPerson => RandomGameSpec { num_players: 2, ..Default::default() },
                    PropertyKind::TwoTerminals => {
                        RandomGameSpec { num_players: 4, max_terminals: 2, ..Default::default() }
                    }
                    PropertyKind::ThreeTerminals => {
                        RandomGameSpec { num_players: 4, max_terminals: 3, ..Default::default() }
                    }
                };
                let g = random_game(&mut r, &spec);
                let profile = random_profile(&mut r, &g);
                let nf = normal_form(&g)?;
                if find_nash_equilibria(&nf, &profile)?.is_ne_free() {
                    writeln!(out, "counterexample at sample {i}:").unwrap();
                    out.push_str(&serialize_game(&g));
                    let prefs: Vec<_> = profile.orders().iter().cloned().map(PlayerPreference::Total).collect();
                    out.push_str(&serialize_preferences(&g, &prefs));
                    return Ok(false);
                }
            }
            writeln!(out, "RESULT counterexamples=0 samples={samples} seed={seed}").unwrap();
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli.command, &mut out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    print!("{out}");
    ExitCode::from(code)
}
