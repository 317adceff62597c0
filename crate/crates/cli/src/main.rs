fn main() {
    // Die quietly on a closed pipe (e.g. `dvgrover expand ... | head`)
    // instead of panicking in the print machinery.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(dvgrover_cli::run());
}
