fn main() -> std::process::ExitCode {
    majvote::cli::run(std::env::args_os())
}
