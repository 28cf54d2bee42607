//! Runs the full verification battery and prints the scoreboard.

fn main() {
    let results = balkit::suite::run_all();
    print!("{}", balkit::suite::scoreboard(&results));
}
