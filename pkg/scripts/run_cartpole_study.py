import sys

from soppi.harness.cli import main


if __name__ == "__main__":
    sys.exit(main(["run", "--config", "data/configs/cartpole_swingup.json", *sys.argv[1:]]))
