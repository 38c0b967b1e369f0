fn main() {
    std::process::exit(med_core::cli::run(std::env::args_os()))
}
