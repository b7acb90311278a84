"""
Helper functions: open_file and save_file
Exceptions raised across the package, each carrying the CLI exit code it maps to
"""
import os
import json
import logging

import pandas as pd

from xswap.config import CSV_FLOAT_FORMAT, EXIT_CODES

# Logging
logger = logging.getLogger("xswap")
handler = logging.StreamHandler()
formatter = logging.Formatter("%(asctime)s %(name)-12s %(levelname)-8s %(message)s")
handler.setFormatter(formatter)
logger.addHandler(handler)
logger.setLevel(logging.INFO)


class XSwapError(Exception):
    """ Base class for errors raised by xswap """

    exit_code = EXIT_CODES["invalid_state"]


class StateFileError(XSwapError, ValueError):
    """ A state file could not be parsed """

    exit_code = EXIT_CODES["parse"]


class InvalidStateError(XSwapError, ValueError):
    """ An X-state or density matrix violates its validity conditions """

    exit_code = EXIT_CODES["invalid_state"]


class InvalidDensityError(InvalidStateError):
    pass


class NonXStateError(InvalidStateError):
    """ A 4x4 matrix has entries outside the X pattern, x_defect is the largest modulus """

    def __init__(self, message, x_defect):
        super().__init__(message)
        self.x_defect = x_defect


class DimensionMismatchError(XSwapError, ValueError):
    pass


class NonHermitianError(XSwapError, ValueError):
    pass


class UndefinedOutcomeError(XSwapError, ValueError):
    """ The conditional state of a zero-probability outcome was needed """


class OutputError(XSwapError, OSError):
    """ A file could not be read or written """

    exit_code = EXIT_CODES["io"]


class SamplerCapError(XSwapError, RuntimeError):
    exit_code = EXIT_CODES["sampler_cap"]


def open_file(file_path):
    """
    Function to open files from filepath: csv (sweeps), jsonl (one JSON record per line,
    returned as a list) or json (state files)
    """
    if not os.path.exists(file_path):
        raise FileNotFoundError(file_path)
    _, extension = os.path.splitext(file_path)
    try:
        if extension == ".csv":
            return pd.read_csv(file_path)
        with open(file_path, "r", encoding="utf-8") as f:
            if extension == ".jsonl":
                return [json.loads(line) for line in f if line.strip()]
            return json.load(f)
    except json.JSONDecodeError as e:
        raise StateFileError("%s is not valid JSON: %s" % (file_path, e)) from e
    except UnicodeDecodeError as e:
        raise StateFileError("%s is not UTF-8 text: %s" % (file_path, e)) from e
    except OSError as e:
        raise OutputError("Could not read %s: %s" % (file_path, e)) from e


def save_file(file, file_path, replace=True):
    """
    Save file with or without replacing previous versions, as csv or text
    input: file: DataFrame (written as csv) or str (written as is)
            file_path: where to write, directory must exist
            replace: False if you do not want to overwrite a previous file with same name
    Return the path actually written
    """
    path, file_name = os.path.split(file_path)
    if path and not os.path.isdir(path):
        raise OutputError("Directory %s does not exist" % path)
    if not replace and os.path.exists(file_path):
        file_name, extension = os.path.splitext(file_name)
        i = 0
        while os.path.exists(os.path.join(path, "%s_%d%s" % (file_name, i, extension))):
            i += 1
        file_path = os.path.join(path, "%s_%d%s" % (file_name, i, extension))
    try:
        if isinstance(file, pd.DataFrame):
            file.to_csv(
                file_path,
                index=False,
                sep=",",
                encoding="utf-8",
                float_format=CSV_FLOAT_FORMAT,
                na_rep="nan",
                lineterminator="\n",
            )
        else:
            with open(file_path, "w", encoding="utf-8", newline="\n") as f:
                f.write(file)
    except OSError as e:
        raise OutputError("Could not write %s: %s" % (file_path, e)) from e
    logger.info("Saved file %s", file_path)
    return file_path
