#!/usr/bin/env python3
"""
Development setup script for the Lambda-atom simulator
Helps developers quickly set up their environment
"""
import shutil
import subprocess
import sys
from pathlib import Path

# ANSI color codes for pretty output
GREEN = '\033[92m'
YELLOW = '\033[93m'
RED = '\033[91m'
BLUE = '\033[94m'
RESET = '\033[0m'


def print_header(text):
    """Print a formatted header"""
    print(f"\n{BLUE}{'=' * 60}{RESET}")
    print(f"{BLUE}{text.center(60)}{RESET}")
    print(f"{BLUE}{'=' * 60}{RESET}\n")


def print_success(text):
    print(f"{GREEN}✅ {text}{RESET}")


def print_warning(text):
    print(f"{YELLOW}⚠️  {text}{RESET}")


def print_error(text):
    print(f"{RED}❌ {text}{RESET}")


def check_python_version():
    """Check if Python version is 3.9 or higher"""
    print("Checking Python version...")
    version = sys.version_info
    if version < (3, 9):
        print_error(f"Python 3.9+ required, but you have {version.major}.{version.minor}")
        sys.exit(1)
    print_success(f"Python {version.major}.{version.minor} detected")


def check_env_file():
    """Write a .env with the default settings if none exists"""
    print("\nChecking environment configuration...")
    if Path('.env').exists():
        print_success(".env file exists")
        return
    from config import Config
    Path('.env').write_text(Config.get_env_example(), encoding="utf-8")
    print_success("Created .env with default settings")


def install_dependencies(with_tests=True):
    """Install Python dependencies"""
    print("\nInstalling dependencies...")
    files = ['requirements.txt'] + (['requirements-test.txt'] if with_tests else [])
    for name in files:
        if shutil.which('uv'):
            subprocess.run(['uv', 'pip', 'install', '-r', name], check=True)
        else:
            subprocess.run([sys.executable, '-m', 'pip', 'install', '-r', name], check=True)
    print_success("Dependencies installed")


def run_tests():
    """Check imports and settings, then run the fast test suite"""
    print("\nRunning basic checks...")
    try:
        import numpy  # noqa: F401
        import scipy  # noqa: F401
        import marshmallow  # noqa: F401
        import dotenv  # noqa: F401
        print_success("All required packages can be imported")
    except ImportError as e:
        print_error(f"Import error: {str(e)}")
        return False

    from config import Config
    problems = Config.initialize()
    if problems:
        for problem in problems:
            print_error(problem)
        return False
    Config.validate_paths()
    print_success(f"Settings validated (output directory: {Config.OUTPUT_DIR})")

    result = subprocess.run([sys.executable, '-m', 'pytest', '-m', 'not slow', '-q'])
    return result.returncode == 0


def main():
    """Main setup function"""
    print_header("Lambda-atom Simulator Setup")

    check_python_version()

    try:
        install_dependencies()
    except subprocess.CalledProcessError:
        print_error("Failed to install dependencies")
        sys.exit(1)

    check_env_file()

    if run_tests():
        print_header("Setup complete")
        print("Try: python cli.py presets")
        print("     python cli.py sweep --preset a-down --tau-end 10 --tau-steps 50")
    else:
        print_warning("Setup finished with problems; see messages above")
        sys.exit(1)


if __name__ == "__main__":
    main()
