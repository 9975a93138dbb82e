use pfgm::cli::run;
use pfgm::WorkBudget;

fn main() {
    let budget = match WorkBudget::from_env() {
        Ok(b) => b,
        Err(msg) => {
            println!("{}", serde_json::json!({ "command": "", "error": msg, "kind": "invalid_input" }));
            std::process::exit(1);
        }
    };
    let outcome = run(std::env::args_os(), &budget);
    for w in &outcome.warnings {
        eprintln!("{w}");
    }
    println!("{}", outcome.stdout.trim_end());
    std::process::exit(outcome.exit_code);
}
