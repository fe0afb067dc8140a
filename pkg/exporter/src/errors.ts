export class ModelUnavailable extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ModelUnavailable";
  }
}

export class IdMismatch extends Error {
  constructor(message: string) {
    super(message);
    this.name = "IdMismatch";
  }
}

export class MalformedRecord extends Error {
  constructor(message: string) {
    super(message);
    this.name = "MalformedRecord";
  }
}
