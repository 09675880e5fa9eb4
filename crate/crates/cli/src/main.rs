use clap::{Args, Parser, Subcommand};
use std::io::{BufRead, Write};
use surreal_cli::{
    eval_line, expand, level_cmd, paths_cmd, rank, render, render_error, signexp, CliError,
    Config, Format, Rendered,
};

#[derive(Parser)]
#[command(name = "surreal", about = "Symbolic workbench for a finitely representable fragment of the surreal numbers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation order for inexact operations
    #[arg(long, default_value_t = 8, global = true)]
    order: usize,
    /// Coefficient mode: `exact` or `float:P` (P decimal digits, P >= 10)
    #[arg(long, default_value = "exact", global = true)]
    coeff: String,
    /// Nesting depth limit
    #[arg(long, default_value_t = 16, global = true)]
    depth: usize,
    /// Output format: `text` or `json`
    #[arg(long, default_value = "text", global = true)]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate expressions (stdin batch mode when none given)
    Eval {
        #[command(flatten)]
        common: Common,
        exprs: Vec<String>,
    },
    /// Asymptotic expansion: leading terms plus a formal-variable rendering
    Expand {
        #[command(flatten)]
        common: Common,
        /// Number of leading terms to keep
        #[arg(long, default_value_t = 5)]
        terms: usize,
        exprs: Vec<String>,
    },
    /// Differentiate expressions
    Derive {
        #[command(flatten)]
        common: Common,
        exprs: Vec<String>,
    },
    /// Compose two expressions: f o x
    Compose {
        #[command(flatten)]
        common: Common,
        f: String,
        x: String,
    },
    /// Sign expansion of a dyadic, or the dyadic of a sign string
    Signexp {
        #[command(flatten)]
        common: Common,
        args: Vec<String>,
    },
    /// Simplest dyadic strictly between two endpoint sets
    Simplest {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Nested truncation rank
    Rank {
        #[command(flatten)]
        common: Common,
        exprs: Vec<String>,
    },
    /// Enumerate the paths of a value
    Paths {
        #[command(flatten)]
        common: Common,
        exprs: Vec<String>,
    },
    /// Compare the levels of two infinite values
    Level {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
    },
}

fn config(c: &Common) -> Result<Config, String> {
    let precision = match c.coeff.as_str() {
        "exact" => None,
        s => match s.strip_prefix("float:").and_then(|p| p.parse::<u32>().ok()) {
            Some(p) if p >= 10 => Some(p),
            _ => return Err(format!("invalid --coeff '{s}': use exact or float:P with P >= 10")),
        },
    };
    let format = match c.format.as_str() {
        "text" => Format::Text,
        "json" => Format::Json,
        s => return Err(format!("invalid --format '{s}': use text or json")),
    };
    if c.order == 0 {
        return Err("--order must be at least 1".to_string());
    }
    Ok(Config { order: c.order, precision, depth: c.depth, format })
}

fn emit(r: Result<Rendered, CliError>, cfg: &Config, code: &mut i32) {
    match r {
        Ok(r) => {
            println!("{}", r.out);
            if let Some(d) = r.diag {
                eprintln!("{d}");
            }
        }
        Err(e) => {
            eprintln!("{}", render_error(&e, cfg));
            if *code == 0 {
                *code = e.code();
            }
        }
    }
}

fn inputs(args: Vec<String>) -> Vec<String> {
    if !args.is_empty() {
        return args;
    }
    let stdin = std::io::stdin();
    stdin
        .lock()
        .lines()
        .map_while(Result::ok)
        .filter(|l| !l.trim().is_empty())
        .collect()
}

fn for_each(
    args: Vec<String>,
    cfg: &Config,
    f: impl Fn(&str, &Config) -> Result<Rendered, CliError>,
) -> i32 {
    let mut code = 0;
    for line in inputs(args) {
        emit(f(&line, cfg), cfg, &mut code);
    }
    code
}

fn text(s: String) -> Rendered {
    Rendered { out: s, diag: None }
}

fn main() {
    let cli = Cli::parse();
    let code = run(cli.command);
    std::io::stdout().flush().ok();
    std::process::exit(code);
}

fn run(cmd: Command) -> i32 {
    let common = match &cmd {
        Command::Eval { common, .. }
        | Command::Expand { common, .. }
        | Command::Derive { common, .. }
        | Command::Compose { common, .. }
        | Command::Signexp { common, .. }
        | Command::Simplest { common, .. }
        | Command::Rank { common, .. }
        | Command::Paths { common, .. }
        | Command::Level { common, .. } => common.clone(),
    };
    let cfg = match config(&common) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match cmd {
        Command::Eval { exprs, .. } => for_each(exprs, &cfg, |s, cfg| {
            eval_line(s, cfg).map(|e| render(&e, cfg))
        }),
        Command::Expand { exprs, terms, .. } => {
            for_each(exprs, &cfg, move |s, cfg| expand(s, terms, cfg))
        }
        Command::Derive { exprs, .. } => for_each(exprs, &cfg, |s, cfg| {
            eval_line(&format!("D({s})"), cfg).map(|e| render(&e, cfg))
        }),
        Command::Compose { f, x, .. } => {
            let mut code = 0;
            emit(
                eval_line(&format!("compose({f}, {x})"), &cfg).map(|e| render(&e, &cfg)),
                &cfg,
                &mut code,
            );
            code
        }
        Command::Signexp { args, .. } => {
            for_each(args, &cfg, |s, _| signexp(s).map(text))
        }
        Command::Simplest { left, right, .. } => {
            let mut code = 0;
            emit(
                eval_line(&format!("simplest({left}, {right})"), &cfg)
                    .map(|e| render(&e, &cfg)),
                &cfg,
                &mut code,
            );
            code
        }
        Command::Rank { exprs, .. } => {
            for_each(exprs, &cfg, |s, cfg| rank(s, cfg).map(text))
        }
        Command::Paths { exprs, .. } => {
            for_each(exprs, &cfg, |s, cfg| paths_cmd(s, cfg).map(text))
        }
        Command::Level { x, y, .. } => {
            let mut code = 0;
            match level_cmd(&x, &y, &cfg) {
                Ok(s) => println!("{s}"),
                Err(e) => {
                    eprintln!("{}", render_error(&e, &cfg));
                    code = e.code();
                }
            }
            code
        }
    }
}
