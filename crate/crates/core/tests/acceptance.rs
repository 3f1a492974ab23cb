use cgx_core::acceptance::Suite;

fn main() {
    let suite = Suite::default();
    let outcomes = suite.run(|o| println!("{o}"));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
