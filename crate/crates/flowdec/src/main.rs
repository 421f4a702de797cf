fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(flowdec::cli::run(std::env::args_os()))
}
