import re

_DIGITS = re.compile(r'(\d+)')
_LABEL = re.compile(r'^[A-Za-z0-9]+$')


def natural_key(label):
    """
    Sort key that orders embedded numbers numerically, so v2 comes before v10
    :param label: An alphanumeric label
    :return: A tuple usable as a sort key
    """
    parts = _DIGITS.split(str(label))
    return tuple((0, int(part)) if part.isdigit() else (1, part) for part in parts if part != '')


def is_label(token):
    """ Whether token is an acceptable vertex or face label (alphanumeric, non-empty) """
    return bool(_LABEL.match(token))


def fresh_labels(existing, count, prefix):
    """
    Return count labels of the form <prefix><k> that do not occur in existing.
    The smallest free k are used, in increasing order
    """
    taken = set(existing)
    labels = []
    k = 1
    while len(labels) < count:
        candidate = f"{prefix}{k}"
        if candidate not in taken:
            labels.append(candidate)
            taken.add(candidate)
        k += 1
    return labels


def edge_label(u, v):
    """ Edge id in the u-v form used by trace files, endpoints in natural order """
    a, b = sorted((u, v), key=natural_key)
    return f"{a}-{b}"
